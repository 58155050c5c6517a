#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "waveholtz/filter.hpp"
#include "waveholtz/krylov.hpp"
#include "waveholtz/problem.hpp"
#include "waveholtz/report.hpp"
#include "waveholtz/wave_solver.hpp"

namespace waveholtz {

struct WaveHoltzConfig {
  TimeGrid tg;
  FilterSpec spec;
  Scheme scheme = Scheme::Leapfrog;
  int max_iters = 1000;
  /// Relative residual target.
  double tol = 1e-8;
  /// Drive at the corrected frequency so the limit solves the unmodified discrete equation.
  bool corrected = false;
};

/// Knobs for picking a time grid and filter from a problem.
struct ConfigOptions {
  Scheme scheme = Scheme::Leapfrog;
  int periods = 1;
  /// Fixed number of steps per window; otherwise derived from the step limits below.
  std::optional<int> steps;
  /// Leapfrog: dt <= leapfrog_safety * 2 / lambda_N and below the stability limit.
  double leapfrog_safety = 0.7;
  /// RK4: dt <= rk4_safety * h_min / c_max.
  double rk4_safety = 1.0;
  /// When given, also enforce dt omega <= min(delta_h, 1).
  std::optional<double> delta_h;
  bool corrected = false;
  int max_iters = 1000;
  double tol = 1e-8;
  /// Replaces the 1/4 in the standard filter.
  std::optional<double> filter_shift;
  /// Extra frequencies for multi-frequency filters; omega of the problem is the base.
  std::vector<double> frequencies;
};

/// Builds a config whose step count is an integer per window (M rounded up,
/// dt recomputed from M) so M dt = T exactly.
WaveHoltzConfig make_config(const HelmholtzProblem& problem, const ConfigOptions& options = {});

/// The WaveHoltz map Pi (and its linear part S) on packed unknowns.
///
/// Unknowns are the non-Dirichlet node values of w for leapfrog, and of
/// (w, v) for RK4.
class WaveHoltzOperator {
 public:
  WaveHoltzOperator(const HelmholtzProblem& problem, const WaveHoltzConfig& config,
                    ForcingSchedule schedule);
  WaveHoltzOperator(const HelmholtzProblem& problem, const WaveHoltzConfig& config);

  std::size_t size() const noexcept { return size_; }
  bool first_order() const noexcept { return first_order_; }
  const WaveEvolver& evolver() const noexcept { return evolver_; }
  const HelmholtzProblem& problem() const noexcept { return evolver_.problem(); }

  /// y = Pi x when forced, y = S x (zero forcing) otherwise.
  void apply(std::span<const double> x, std::span<double> y, bool forced = true) const;

  std::vector<double> pack(const WaveState& state) const;
  WaveState unpack(std::span<const double> x) const;

  /// Evolves from x over one more window, returning w at the sample times.
  std::vector<ScalarField> sample(std::span<const double> x, std::span<const int> steps) const;

 private:
  WaveEvolver evolver_;
  bool first_order_;
  std::size_t nodes_;
  std::size_t size_;
  mutable std::vector<double> w_, v_, fw_, fv_;
};

/// Pi applied to a full state (RK4) or a displacement (leapfrog).
WaveState pi_apply(const WaveState& v, const HelmholtzProblem& problem, const WaveHoltzConfig& config);
ScalarField pi_apply(const ScalarField& v, const HelmholtzProblem& problem,
                     const WaveHoltzConfig& config);

struct WaveHoltzSolution {
  WaveState state;
  IterationReport report;
};

/// v <- Pi v from v = 0 until ||v^{k+1} - v^k|| / ||v^1 - v^0|| <= tol.
/// Non-convergence is reported, not thrown.
WaveHoltzSolution fixed_point_solve(const HelmholtzProblem& problem, const WaveHoltzConfig& config);

/// A x = x - (Pi x - Pi 0), b = Pi 0; the fixed point solves A x = b.
struct AffineSystem {
  std::shared_ptr<const WaveHoltzOperator> pi;
  LinearOperator A;
  std::vector<double> b;
};

AffineSystem as_affine_system(const HelmholtzProblem& problem, const WaveHoltzConfig& config);
AffineSystem as_affine_system(const HelmholtzProblem& problem, const WaveHoltzConfig& config,
                              ForcingSchedule schedule);

/// Krylov-accelerated solve of the affine system. The report counts the
/// forced solve for b as one extra operator application.
WaveHoltzSolution krylov_solve(const HelmholtzProblem& problem, const WaveHoltzConfig& config,
                               const KrylovConfig& krylov);

enum class SolverMethod { FixedPoint, GMRES, CG };

/// Sample times 0 = t_0 < ... for extraction, snapped to the time grid and
/// chosen to minimize the 2-norm condition number of a_ij = cos(omega_j t_i).
struct SamplingPlan {
  std::vector<int> steps;
  std::vector<double> times;
  double condition = 0.0;
};

SamplingPlan choose_sampling_times(std::span<const double> frequencies, const TimeGrid& tg);

/// Rows of the inverse of a_ij = cos(omega_j t_i).
std::vector<std::vector<double>> extraction_matrix(std::span<const double> frequencies,
                                                   std::span<const double> times);

struct MultiFrequencySolution {
  std::vector<ScalarField> solutions;
  IterationReport report;
  SamplingPlan sampling;
};

/// Solves for several integer-related frequencies with one combined forcing,
/// then extracts the per-frequency fields from one more sampled period.
MultiFrequencySolution multifreq_solve(const HelmholtzProblem& problem,
                                       const ForcingSchedule& schedule,
                                       const WaveHoltzConfig& config, SolverMethod method,
                                       const KrylovConfig& krylov = {});

}  // namespace waveholtz
