#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "waveholtz/grid.hpp"
#include "whi/config.hpp"

namespace whi {

/// One (omega, method) solve. Failures land in `error` with converged = false.
struct RunRow {
  std::string sweep;
  double omega = 0.0;
  Method method = Method::FixedPoint;
  int n = 0;
  std::size_t dofs = 0;
  int iters = 0;
  std::size_t applications = 0;
  double final_residual = std::numeric_limits<double>::quiet_NaN();
  double measured_rate = std::numeric_limits<double>::quiet_NaN();
  double wall_time = 0.0;
  bool converged = false;
  /// From the analytic spectrum (constant speed, all-Dirichlet box only).
  double delta_h = std::numeric_limits<double>::quiet_NaN();
  /// Set only when the run satisfies the step-size hypotheses of the rate bound.
  double rate_bound = std::numeric_limits<double>::quiet_NaN();
  std::string error;

  std::vector<double> history;
  std::optional<waveholtz::ScalarField> field;
};

RunRow run_point(const RunConfig& config, double omega, Method method);

/// Every (omega, method) pair, omega-major, in config order whatever the thread count.
std::vector<RunRow> run_points(const RunConfig& config, int threads = 1);

struct SweepFiles {
  std::filesystem::path csv;
  std::vector<std::filesystem::path> histories;
  std::vector<std::filesystem::path> fields;
};

/// Writes <name>.csv plus per-run histories and (optionally) field dumps into `dir`.
SweepFiles write_sweep(const RunConfig& config, std::span<const RunRow> rows, const std::filesystem::path& dir,
                       bool fields);

extern const char* const kCsvHeader;
void write_csv(std::ostream& out, std::span<const RunRow> rows);

}  // namespace whi
