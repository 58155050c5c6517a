#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "waveholtz/report.hpp"

namespace waveholtz {

/// Matrix-free linear map y = A x on R^dim.
struct LinearOperator {
  std::size_t dim = 0;
  std::function<void(std::span<const double> x, std::span<double> y)> apply;
  bool symmetric_hint = false;
};

enum class KrylovMethod { GMRES, CG };

struct KrylovConfig {
  KrylovMethod method = KrylovMethod::GMRES;
  int restart = 100;
  /// Relative residual ||b - A x|| / ||b||.
  double tol = 1e-10;
  int max_iters = 1000;
};

struct KrylovResult {
  std::vector<double> x;
  IterationReport report;
};

/// Restarted GMRES with modified Gram-Schmidt (plus one reorthogonalization
/// pass when orthogonality is lost) and Givens rotations. Starts from x = 0.
KrylovResult gmres_solve(const LinearOperator& A, std::span<const double> b,
                         const KrylovConfig& config);

/// Conjugate gradients from x = 0. Throws IndefiniteOperatorError when
/// <A p, p> <= 0.
KrylovResult cg_solve(const LinearOperator& A, std::span<const double> b, const KrylovConfig& config);

/// Dispatches on config.method.
KrylovResult krylov_solve(const LinearOperator& A, std::span<const double> b,
                          const KrylovConfig& config);

/// Probes A on random vectors and returns the worst relative deviation from linearity.
double linearity_defect(const LinearOperator& A, int probes = 3, unsigned seed = 7);

}  // namespace waveholtz
