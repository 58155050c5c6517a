#pragma once

#include <cstddef>
#include <vector>

#include "waveholtz/boundary.hpp"
#include "waveholtz/grid.hpp"

namespace waveholtz {

/// div(c^2 grad u) + omega^2 u = f on a box with homogeneous boundary data.
///
/// The forcing is zeroed on Dirichlet nodes when the problem is built. A node
/// is a Dirichlet node when it lies on any Dirichlet side.
class HelmholtzProblem {
 public:
  HelmholtzProblem(UniformGrid grid, ScalarField csq, ScalarField forcing, double omega,
                   BoundarySpec bcs);

  /// Constant wave speed squared.
  static HelmholtzProblem constant(const UniformGrid& grid, double csq, ScalarField forcing,
                                   double omega, BoundarySpec bcs);

  const UniformGrid& grid() const noexcept { return grid_; }
  const ScalarField& csq() const noexcept { return csq_; }
  const ScalarField& forcing() const noexcept { return forcing_; }
  double omega() const noexcept { return omega_; }
  const BoundarySpec& bcs() const noexcept { return bcs_; }

  bool constant_speed() const noexcept { return constant_speed_; }
  double max_csq() const noexcept { return max_csq_; }

  bool is_dirichlet_node(std::size_t k) const { return dirichlet_mask_[k] != 0; }
  /// Flat indices of all non-Dirichlet nodes, ascending.
  const std::vector<std::size_t>& active_nodes() const noexcept { return active_; }

  /// Copy with a different frequency and/or forcing; grid, speed and BCs are shared.
  HelmholtzProblem with_omega(double omega) const;
  HelmholtzProblem with_forcing(ScalarField forcing) const;

  /// Sets every Dirichlet node of a field (or raw node vector) to zero.
  void zero_dirichlet(ScalarField& field) const;
  void zero_dirichlet(std::span<double> values) const;

 private:
  UniformGrid grid_;
  ScalarField csq_;
  ScalarField forcing_;
  double omega_;
  BoundarySpec bcs_;
  bool constant_speed_ = true;
  double max_csq_ = 0.0;
  std::vector<unsigned char> dirichlet_mask_;
  std::vector<std::size_t> active_;
};

/// Displacement/velocity pair of the wave equation at time t.
struct WaveState {
  ScalarField w;
  ScalarField v;
  double t = 0.0;

  explicit WaveState(const UniformGrid& grid) : w(grid), v(grid) {}
  WaveState(ScalarField w_, ScalarField v_, double t_ = 0.0);
};

}  // namespace waveholtz
