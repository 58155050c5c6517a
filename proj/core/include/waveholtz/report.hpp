#pragma once

#include <cstddef>
#include <vector>

namespace waveholtz {

/// Convergence record shared by the fixed-point and Krylov solvers.
struct IterationReport {
  /// Relative residual after each iteration; entry 0 is the starting value.
  std::vector<double> residual_history;
  int iters = 0;
  bool converged = false;
  /// Geometric mean of the last-quartile residual ratios.
  double measured_rate = 0.0;
  double wall_time = 0.0;
  /// Number of operator applications (one wave solve each for WaveHoltz).
  std::size_t operator_applications = 0;
  /// Residual went up at some iteration (CG on non-symmetric operators, restarted GMRES).
  bool non_monotone = false;

  double final_residual() const { return residual_history.empty() ? 0.0 : residual_history.back(); }
};

/// Geometric mean of residual ratios over the last quarter of the history
/// (at least one ratio). Returns 1 when fewer than two entries exist.
double measured_rate(const std::vector<double>& residual_history);

}  // namespace waveholtz
