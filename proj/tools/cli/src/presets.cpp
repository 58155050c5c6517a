#include "whi/presets.hpp"

#include <algorithm>
#include <cmath>

namespace whi {

using waveholtz::ScalarField;
using waveholtz::UniformGrid;

namespace {

int nearest_node(const UniformGrid& g, int d, double x) {
  const long i = std::lround((x - g.lo(d)) / g.spacing(d));
  return static_cast<int>(std::clamp(i, 0L, static_cast<long>(g.cells(d))));
}

}  // namespace

ScalarField forcing_preset(const std::string& name, const UniformGrid& grid, double omega,
                           std::optional<std::array<double, 2>> source) {
  if (name == "gaussian1d") {
    if (grid.dim() != 1) throw ConfigError("gaussian1d needs a 1D grid");
    return ScalarField::sample(grid, [&](double x, double) { return omega * omega * std::exp(-(omega * x) * (omega * x)); });
  }
  if (name == "gaussian2d") {
    if (grid.dim() != 2) throw ConfigError("gaussian2d needs a 2D grid");
    const double s = std::max(36.0, omega * omega);
    return ScalarField::sample(grid, [&](double x, double y) {
      return -omega * omega * std::exp(-s * ((x - 0.01) * (x - 0.01) + (y - 0.015) * (y - 0.015)));
    });
  }
  if (name == "delta") {
    std::array<double, 2> at{0.5 * (grid.lo(0) + grid.hi(0)), 0.0};
    if (grid.dim() == 2) at[1] = 0.5 * (grid.lo(1) + grid.hi(1));
    if (source) at = *source;
    ScalarField f(grid);
    const int i = nearest_node(grid, 0, at[0]);
    if (grid.dim() == 1) {
      f[grid.index(i)] = -1.0 / grid.spacing(0);
    } else {
      f[grid.index(i, nearest_node(grid, 1, at[1]))] = -1.0 / grid.cell_volume();
    }
    return f;
  }
  throw ConfigError("unknown forcing preset '" + name + "'");
}

ScalarField csq_preset(const std::string& name, const UniformGrid& grid, double value, double upper) {
  if (name == "constant") return ScalarField(grid, value);
  if (name == "two_layer") {
    const double mid = 0.5 * (grid.lo(0) + grid.hi(0));
    return ScalarField::sample(grid, [&](double x, double) { return x < mid ? value : upper; });
  }
  throw ConfigError("unknown c^2 preset '" + name + "'");
}

UniformGrid build_grid(const ProblemBlock& block, double omega) {
  const int n = block.cells(omega);
  if (block.dim == 1) return UniformGrid::line(block.lower[0], block.upper[0], n);
  return UniformGrid::box(block.lower, block.upper, {n, n});
}

waveholtz::HelmholtzProblem build_problem(const ProblemBlock& block, double omega) {
  const auto grid = build_grid(block, omega);
  waveholtz::BoundarySpec bcs = block.dim == 1
                                    ? waveholtz::BoundarySpec::line(block.bcs[0], block.bcs[1])
                                    : waveholtz::BoundarySpec::box(block.bcs[0], block.bcs[1], block.bcs[2], block.bcs[3]);
  if (block.impedance) bcs.with_impedance((*block.impedance)[0], (*block.impedance)[1]);
  auto forcing = forcing_preset(block.forcing, grid, omega, block.source);
  if (block.csq == "constant")
    return waveholtz::HelmholtzProblem::constant(grid, block.csq_value, std::move(forcing), omega, bcs);
  return waveholtz::HelmholtzProblem(grid, csq_preset(block.csq, grid, block.csq_value, block.csq_upper),
                                     std::move(forcing), omega, bcs);
}

}  // namespace whi
