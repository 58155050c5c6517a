#pragma once

#include <array>
#include <optional>
#include <string>

#include "waveholtz/grid.hpp"
#include "waveholtz/problem.hpp"
#include "whi/config.hpp"

namespace whi {

/// gaussian1d: omega^2 exp(-(omega x)^2)
/// gaussian2d: -omega^2 exp(-s((x - 0.01)^2 + (y - 0.015)^2)), s = max(36, omega^2)
/// delta:      -1/h (1D) or -1/(hx hy) (2D) at the node nearest `source`, zero elsewhere
waveholtz::ScalarField forcing_preset(const std::string& name, const waveholtz::UniformGrid& grid, double omega,
                                      std::optional<std::array<double, 2>> source = std::nullopt);

/// constant: c^2 = value everywhere; two_layer: value below the x midpoint, upper above it.
waveholtz::ScalarField csq_preset(const std::string& name, const waveholtz::UniformGrid& grid, double value,
                                  double upper);

waveholtz::UniformGrid build_grid(const ProblemBlock& block, double omega);
waveholtz::HelmholtzProblem build_problem(const ProblemBlock& block, double omega);

}  // namespace whi
