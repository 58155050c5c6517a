#pragma once

#include <Eigen/SparseCore>

#include <array>
#include <vector>

#include "waveholtz/problem.hpp"
#include "waveholtz/waveholtz.hpp"

namespace waveholtz::oracle {

/// Closed-form eigenpairs of L_h on a constant-speed all-Dirichlet box.
///
/// Mode (j, k) is sin(j pi (x - lo) / L) sin(k pi (y - lo) / L) with
/// lambda^2 = c^2 (4 / h_x^2) sin^2(j pi / (2 n_x)) + c^2 (4 / h_y^2) sin^2(k pi / (2 n_y)).
struct SpectralDecomposition {
  UniformGrid grid;
  /// Sorted ascending.
  std::vector<double> lambdas;
  /// Mode indices matching lambdas; the second entry is 0 in 1D.
  std::vector<std::array<int, 2>> indices;

  /// min_j |lambda_j - omega| / omega
  double delta_h(double omega) const;
  /// (2 / dt) asin(dt lambda_j / 2) for every mode.
  std::vector<double> shifted(double dt) const;
  ScalarField mode(std::size_t i) const;
};

SpectralDecomposition dirichlet_box_spectrum(const HelmholtzProblem& problem);

/// Sine coefficients v_hat(j, k) on the same ordering as mode indices
/// (row-major over j = 1..n_x - 1, k = 1..n_y - 1) and the inverse map.
std::vector<double> sine_transform(const ScalarField& v);
ScalarField inverse_sine_transform(const UniformGrid& grid, const std::vector<double>& coefficients);

/// Sparse L_h restricted to the non-Dirichlet nodes (impedance excluded).
Eigen::SparseMatrix<double> assemble_laplacian(const HelmholtzProblem& problem);

/// Solves -L_h v + sigma^2 v = f on the non-Dirichlet nodes by sparse LU.
ScalarField direct_helmholtz_solve(const HelmholtzProblem& problem, double sigma);

/// ||-L_h v + sigma^2 v - f|| / ||f||
double helmholtz_residual(const HelmholtzProblem& problem, const ScalarField& v, double sigma);

/// Pi_h applied mode by mode for a constant-speed Dirichlet box under leapfrog.
ScalarField pi_apply_spectral(const ScalarField& v, const HelmholtzProblem& problem,
                              const WaveHoltzConfig& config);

struct TrapezoidReference {
  double direct = 0.0;       // h sum eta_n cos(alpha n h)
  double closed_form = 0.0;  // g(h alpha) sin(alpha) / alpha
  double exact = 0.0;        // sin(alpha) / alpha
  double bound = 0.0;        // h^2 |alpha| / 12
};

/// Trapezoid rule for int_0^1 cos(alpha t) dt with M intervals; needs |alpha / M| <= pi.
TrapezoidReference trapezoid_reference(double alpha, int M);

/// x / (2 tan(x / 2)) with g(0) = 1.
double trapezoid_factor(double x);

}  // namespace waveholtz::oracle
