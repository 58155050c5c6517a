#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "waveholtz/boundary.hpp"
#include "waveholtz/wave_solver.hpp"

namespace whi {

/// Anything wrong with a run configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { FixedPoint, GMRES, CG };

std::string to_string(Method method);
Method parse_method(const std::string& text);

struct ProblemBlock {
  int dim = 1;
  std::array<double, 2> lower{0.0, 0.0};
  std::array<double, 2> upper{1.0, 1.0};
  /// Exactly one of these: a fixed cell count, or cells = cells_per_omega * ceil(omega).
  std::optional<int> n;
  std::optional<int> cells_per_omega;
  std::string csq = "constant";
  double csq_value = 1.0;
  /// c^2 on the upper half (x above the midpoint) for the two_layer preset.
  double csq_upper = 4.0;
  std::string forcing = "gaussian1d";
  /// Point-source location for the delta preset; defaults to the domain center.
  std::optional<std::array<double, 2>> source;
  std::array<waveholtz::BoundaryCondition, 4> bcs{
      waveholtz::BoundaryCondition::Dirichlet, waveholtz::BoundaryCondition::Dirichlet,
      waveholtz::BoundaryCondition::Dirichlet, waveholtz::BoundaryCondition::Dirichlet};
  std::optional<std::array<double, 2>> impedance;  // alpha, beta

  int cells(double omega) const;
};

struct SolverBlock {
  std::vector<Method> methods{Method::FixedPoint};
  waveholtz::Scheme scheme = waveholtz::Scheme::Leapfrog;
  double tol = 1e-8;
  int max_iters = 1000;
  int periods = 1;
  std::optional<int> steps;
  /// GMRES restart length; 0 runs full GMRES.
  int restart = 0;
  bool corrected = false;
  /// Also cap dt so dt omega <= min(delta_h, 1) (needs the analytic spectrum).
  bool theorem_step = false;
};

struct FilterBlock {
  enum class Kind { Standard, Tunable, Optimize };
  Kind kind = Kind::Standard;
  double a0 = -0.25;
  /// a_2, a_3, ... for the tunable filter.
  std::vector<double> sines;
  double resonant = 0.0;
  int terms = 12;
  std::uint64_t seed = 20200101;
};

struct SweepBlock {
  std::string name = "sweep";
  std::vector<double> omegas;
};

struct OutputBlock {
  std::filesystem::path dir = "out";
  bool fields = false;
  bool histories = true;
};

struct RunConfig {
  ProblemBlock problem;
  SolverBlock solver;
  FilterBlock filter;
  SweepBlock sweep;
  OutputBlock output;

  /// INI text with [problem], [solver], [filter], [sweep], [output] sections.
  static RunConfig parse(std::istream& in);
  static RunConfig load(const std::filesystem::path& path);
};

}  // namespace whi
