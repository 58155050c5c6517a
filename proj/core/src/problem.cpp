#include "waveholtz/problem.hpp"

#include <algorithm>

#include "waveholtz/errors.hpp"

namespace waveholtz {

HelmholtzProblem::HelmholtzProblem(UniformGrid grid, ScalarField csq, ScalarField forcing,
                                   double omega, BoundarySpec bcs)
    : grid_(std::move(grid)),
      csq_(std::move(csq)),
      forcing_(std::move(forcing)),
      omega_(omega),
      bcs_(bcs) {
  if (!(csq_.grid() == grid_) || !(forcing_.grid() == grid_))
    throw StructuralError("wave speed and forcing must live on the problem grid");
  if (bcs_.dim() != grid_.dim()) throw StructuralError("boundary spec dimension does not match grid");
  if (!(omega_ > 0.0)) throw DomainError("omega must be positive");

  const auto c = csq_.values();
  if (std::any_of(c.begin(), c.end(), [](double x) { return !(x > 0.0); }))
    throw DomainError("c^2 must be positive everywhere");
  max_csq_ = *std::max_element(c.begin(), c.end());
  constant_speed_ = std::all_of(c.begin(), c.end(), [&](double x) { return x == c[0]; });

  dirichlet_mask_.assign(grid_.node_count(), 0);
  const int nx = grid_.nodes(0);
  const int ny = grid_.dim() == 2 ? grid_.nodes(1) : 1;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      bool dirichlet = (i == 0 && bcs_.at(0, false) == BoundaryCondition::Dirichlet) ||
                       (i == nx - 1 && bcs_.at(0, true) == BoundaryCondition::Dirichlet);
      if (grid_.dim() == 2) {
        dirichlet = dirichlet ||
                    (j == 0 && bcs_.at(1, false) == BoundaryCondition::Dirichlet) ||
                    (j == ny - 1 && bcs_.at(1, true) == BoundaryCondition::Dirichlet);
      }
      const std::size_t k = grid_.index(i, j);
      dirichlet_mask_[k] = dirichlet ? 1 : 0;
      if (!dirichlet) active_.push_back(k);
    }
  }
  zero_dirichlet(forcing_);
}

HelmholtzProblem HelmholtzProblem::constant(const UniformGrid& grid, double csq,
                                            ScalarField forcing, double omega, BoundarySpec bcs) {
  return HelmholtzProblem(grid, ScalarField(grid, csq), std::move(forcing), omega, bcs);
}

HelmholtzProblem HelmholtzProblem::with_omega(double omega) const {
  HelmholtzProblem copy = *this;
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  copy.omega_ = omega;
  return copy;
}

HelmholtzProblem HelmholtzProblem::with_forcing(ScalarField forcing) const {
  if (!(forcing.grid() == grid_)) throw StructuralError("forcing must live on the problem grid");
  HelmholtzProblem copy = *this;
  copy.forcing_ = std::move(forcing);
  copy.zero_dirichlet(copy.forcing_);
  return copy;
}

void HelmholtzProblem::zero_dirichlet(ScalarField& field) const {
  if (!(field.grid() == grid_)) throw StructuralError("field does not live on the problem grid");
  zero_dirichlet(field.values());
}

void HelmholtzProblem::zero_dirichlet(std::span<double> values) const {
  if (values.size() != dirichlet_mask_.size())
    throw StructuralError("vector length does not match the problem grid");
  for (std::size_t k = 0; k < values.size(); ++k)
    if (dirichlet_mask_[k]) values[k] = 0.0;
}

WaveState::WaveState(ScalarField w_, ScalarField v_, double t_)
    : w(std::move(w_)), v(std::move(v_)), t(t_) {
  if (!(w.grid() == v.grid())) throw StructuralError("w and v must share a grid");
}

}  // namespace waveholtz
