#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "waveholtz/problem.hpp"

namespace waveholtz::testing {

inline HelmholtzProblem dirichlet_line(int n, double omega, double lo = 0.0, double hi = 1.0) {
  const auto grid = UniformGrid::line(lo, hi, n);
  auto f = ScalarField::sample(grid, [&](double x, double) {
    const double mid = 0.5 * (lo + hi);
    return std::exp(-40.0 * (x - mid) * (x - mid)) + 0.3 * x;
  });
  return HelmholtzProblem::constant(grid, 1.0, f, omega,
                                    BoundarySpec::uniform(1, BoundaryCondition::Dirichlet));
}

inline HelmholtzProblem dirichlet_box(int n, double omega) {
  const auto grid = UniformGrid::box({-1.0, -1.0}, {1.0, 1.0}, {n, n});
  auto f = ScalarField::sample(grid, [](double x, double y) {
    return std::exp(-20.0 * ((x - 0.1) * (x - 0.1) + (y + 0.2) * (y + 0.2)));
  });
  return HelmholtzProblem::constant(grid, 1.0, f, omega,
                                    BoundarySpec::uniform(2, BoundaryCondition::Dirichlet));
}

inline ScalarField random_field(const HelmholtzProblem& problem, std::mt19937& rng) {
  std::normal_distribution<double> normal;
  ScalarField v(problem.grid());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = normal(rng);
  problem.zero_dirichlet(v);
  return v;
}

inline double relative_difference(const ScalarField& a, const ScalarField& b) {
  return norm2(a - b) / norm2(b);
}

}  // namespace waveholtz::testing
