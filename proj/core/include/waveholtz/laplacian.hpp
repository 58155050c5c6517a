#pragma once

#include <array>
#include <span>
#include <vector>

#include "waveholtz/problem.hpp"

namespace waveholtz {

/// Second-order stencil for L_h ~ -div(c^2 grad .).
///
/// Uses D+(c^2_{i-1/2} D-) per coordinate with midpoint averaged c^2. Rows of
/// Dirichlet nodes are zero. Neumann sides mirror the inner neighbour into the
/// ghost node. Impedance sides pick the ghost so that
/// alpha * v + beta * n.D0 w = 0 holds at the boundary node, which needs the
/// boundary velocity.
class DiscreteLaplacian {
 public:
  explicit DiscreteLaplacian(const HelmholtzProblem& problem);

  /// out = L_h w. `velocity` is only read on impedance sides and may be empty
  /// when there are none.
  void apply(std::span<const double> w, std::span<double> out,
             std::span<const double> velocity = {}) const;

  std::size_t size() const noexcept { return mask_.size(); }
  bool has_impedance() const noexcept { return has_impedance_; }

 private:
  void apply_1d(std::span<const double> w, std::span<double> out,
                std::span<const double> velocity) const;
  void apply_2d(std::span<const double> w, std::span<double> out,
                std::span<const double> velocity) const;

  int dim_;
  int nx_, ny_;  // node counts
  double hx_, hy_;
  // Coefficient c^2_{i+1/2} / h^2 stored at the left node of each x (resp. y) edge.
  std::vector<double> cx_, cy_;
  std::vector<unsigned char> mask_;  // 1 on Dirichlet nodes
  std::array<BoundaryCondition, 4> sides_;
  double impedance_ratio_;  // alpha / beta
  bool has_impedance_;
};

/// L_h w on a problem without impedance sides.
ScalarField apply_discrete_laplacian(const HelmholtzProblem& problem, const ScalarField& w);
/// L_h w with impedance ghosts taken from the boundary velocity.
ScalarField apply_discrete_laplacian(const HelmholtzProblem& problem, const ScalarField& w,
                                     const ScalarField& velocity);

/// Upper estimate of lambda_N = sqrt(max eigenvalue of L_h): 2 sqrt(sum_d c^2_max / h_d^2).
double estimate_max_frequency(const HelmholtzProblem& problem);

}  // namespace waveholtz
