#include "waveholtz/laplacian.hpp"

#include <cmath>

#include "waveholtz/errors.hpp"

namespace waveholtz {

DiscreteLaplacian::DiscreteLaplacian(const HelmholtzProblem& problem)
    : dim_(problem.grid().dim()),
      nx_(problem.grid().nodes(0)),
      ny_(problem.grid().dim() == 2 ? problem.grid().nodes(1) : 1),
      hx_(problem.grid().spacing(0)),
      hy_(problem.grid().dim() == 2 ? problem.grid().spacing(1) : 1.0),
      impedance_ratio_(problem.bcs().impedance_alpha() / problem.bcs().impedance_beta()),
      has_impedance_(problem.bcs().has(BoundaryCondition::Impedance)) {
  const auto& grid = problem.grid();
  const auto c = problem.csq().values();
  for (int s = 0; s < 4; ++s) sides_[s] = problem.bcs().at(static_cast<Side>(s));

  mask_.resize(grid.node_count());
  for (std::size_t k = 0; k < mask_.size(); ++k) mask_[k] = problem.is_dirichlet_node(k) ? 1 : 0;

  cx_.assign(grid.node_count(), 0.0);
  const double ihx2 = 1.0 / (hx_ * hx_);
  for (int i = 0; i + 1 < nx_; ++i)
    for (int j = 0; j < ny_; ++j)
      cx_[grid.index(i, j)] = 0.5 * (c[grid.index(i, j)] + c[grid.index(i + 1, j)]) * ihx2;

  if (dim_ == 2) {
    cy_.assign(grid.node_count(), 0.0);
    const double ihy2 = 1.0 / (hy_ * hy_);
    for (int i = 0; i < nx_; ++i)
      for (int j = 0; j + 1 < ny_; ++j)
        cy_[grid.index(i, j)] = 0.5 * (c[grid.index(i, j)] + c[grid.index(i, j + 1)]) * ihy2;
  }
}

void DiscreteLaplacian::apply(std::span<const double> w, std::span<double> out,
                              std::span<const double> velocity) const {
  if (w.size() != mask_.size() || out.size() != mask_.size())
    throw StructuralError("Laplacian operand does not match the grid");
  if (has_impedance_ && velocity.size() != mask_.size())
    throw UnsupportedError("impedance sides need the boundary velocity to close the stencil");
  if (dim_ == 1)
    apply_1d(w, out, velocity);
  else
    apply_2d(w, out, velocity);
}

void DiscreteLaplacian::apply_1d(std::span<const double> w, std::span<double> out,
                                 std::span<const double> velocity) const {
  const int n = nx_ - 1;
  auto ghost = [&](bool high) {
    const int b = high ? n : 0;
    const int inner = high ? n - 1 : 1;
    if (sides_[high ? 1 : 0] == BoundaryCondition::Impedance)
      return w[inner] - 2.0 * hx_ * impedance_ratio_ * velocity[b];
    return w[inner];
  };

  for (int i = 1; i < n; ++i)
    out[i] = -(cx_[i] * (w[i + 1] - w[i]) - cx_[i - 1] * (w[i] - w[i - 1]));

  if (mask_[0]) {
    out[0] = 0.0;
  } else {
    out[0] = -(cx_[0] * (w[1] - w[0]) - cx_[0] * (w[0] - ghost(false)));
  }
  if (mask_[n]) {
    out[n] = 0.0;
  } else {
    out[n] = -(cx_[n - 1] * (ghost(true) - w[n]) - cx_[n - 1] * (w[n] - w[n - 1]));
  }
}

void DiscreteLaplacian::apply_2d(std::span<const double> w, std::span<double> out,
                                 std::span<const double> velocity) const {
  const int nx = nx_, ny = ny_;
  const std::size_t row = static_cast<std::size_t>(ny);
  std::vector<double> ghost_row;

  // Ghost row beyond x-side `high` for the boundary row b with inner row `inner`.
  auto fill_ghost_row = [&](bool high, int b, int inner) -> const double* {
    const double* wi = w.data() + inner * row;
    if (sides_[high ? 1 : 0] != BoundaryCondition::Impedance) return wi;
    ghost_row.resize(row);
    const double* vb = velocity.data() + b * row;
    const double s = 2.0 * hx_ * impedance_ratio_;
    for (int j = 0; j < ny; ++j) ghost_row[j] = wi[j] - s * vb[j];
    return ghost_row.data();
  };

  const double sy = 2.0 * hy_ * impedance_ratio_;
  const bool ylo_imp = sides_[2] == BoundaryCondition::Impedance;
  const bool yhi_imp = sides_[3] == BoundaryCondition::Impedance;

  for (int i = 0; i < nx; ++i) {
    const double* wr = w.data() + i * row;
    double* o = out.data() + i * row;

    // x-direction neighbours and edge coefficients.
    const double *wm, *wp, *cm, *cp;
    if (i > 0 && i < nx - 1) {
      wm = wr - row;
      wp = wr + row;
      cm = cx_.data() + (i - 1) * row;
      cp = cx_.data() + i * row;
    } else if (i == 0) {
      wp = wr + row;
      cp = cx_.data();
      cm = cp;
      wm = fill_ghost_row(false, 0, 1);
    } else {
      wm = wr - row;
      cm = cx_.data() + (i - 1) * row;
      cp = cm;
      wp = fill_ghost_row(true, nx - 1, nx - 2);
    }

    const double* cyr = cy_.data() + i * row;
    for (int j = 1; j < ny - 1; ++j) {
      const double x = cp[j] * (wp[j] - wr[j]) - cm[j] * (wr[j] - wm[j]);
      const double y = cyr[j] * (wr[j + 1] - wr[j]) - cyr[j - 1] * (wr[j] - wr[j - 1]);
      o[j] = -(x + y);
    }
    {
      const int j = 0;
      double g = wr[1];
      if (ylo_imp) g -= sy * velocity[i * row];
      const double x = cp[j] * (wp[j] - wr[j]) - cm[j] * (wr[j] - wm[j]);
      const double y = cyr[0] * (wr[1] - wr[0]) - cyr[0] * (wr[0] - g);
      o[j] = -(x + y);
    }
    {
      const int j = ny - 1;
      double g = wr[j - 1];
      if (yhi_imp) g -= sy * velocity[i * row + j];
      const double x = cp[j] * (wp[j] - wr[j]) - cm[j] * (wr[j] - wm[j]);
      const double y = cyr[j - 1] * (g - wr[j]) - cyr[j - 1] * (wr[j] - wr[j - 1]);
      o[j] = -(x + y);
    }
    const unsigned char* m = mask_.data() + i * row;
    for (int j = 0; j < ny; ++j)
      if (m[j]) o[j] = 0.0;
  }
}

ScalarField apply_discrete_laplacian(const HelmholtzProblem& problem, const ScalarField& w) {
  if (!(w.grid() == problem.grid())) throw StructuralError("field does not live on the problem grid");
  DiscreteLaplacian lap(problem);
  ScalarField out(problem.grid());
  lap.apply(w.values(), out.values());
  return out;
}

ScalarField apply_discrete_laplacian(const HelmholtzProblem& problem, const ScalarField& w,
                                     const ScalarField& velocity) {
  if (!(w.grid() == problem.grid()) || !(velocity.grid() == problem.grid()))
    throw StructuralError("field does not live on the problem grid");
  DiscreteLaplacian lap(problem);
  ScalarField out(problem.grid());
  lap.apply(w.values(), out.values(), velocity.values());
  return out;
}

double estimate_max_frequency(const HelmholtzProblem& problem) {
  const auto& g = problem.grid();
  double sum = 0.0;
  for (int d = 0; d < g.dim(); ++d) sum += problem.max_csq() / (g.spacing(d) * g.spacing(d));
  return 2.0 * std::sqrt(sum);
}

}  // namespace waveholtz
