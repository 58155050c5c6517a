#include "waveholtz/krylov.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "waveholtz/errors.hpp"

namespace waveholtz {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void validate(const LinearOperator& A, std::span<const double> b, const KrylovConfig& config) {
  if (!A.apply) throw StructuralError("linear operator has no apply function");
  if (b.size() != A.dim) throw StructuralError("right-hand side size does not match the operator");
  if (!(config.tol > 0.0)) throw DomainError("tolerance must be positive");
  if (config.restart < 1) throw DomainError("restart must be at least 1");
  if (config.max_iters < 1) throw DomainError("max_iters must be at least 1");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

KrylovResult gmres_solve(const LinearOperator& A, std::span<const double> b,
                         const KrylovConfig& config) {
  validate(A, b, config);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = A.dim;
  KrylovResult result;
  result.x.assign(n, 0.0);
  auto& rep = result.report;

  const double bnorm = norm(b);
  if (bnorm == 0.0) {
    rep.residual_history = {0.0};
    rep.converged = true;
    rep.measured_rate = measured_rate(rep.residual_history);
    rep.wall_time = seconds_since(start);
    return result;
  }
  rep.residual_history.push_back(1.0);

  const int m = config.restart;
  std::vector<std::vector<double>> V(m + 1, std::vector<double>(n));
  std::vector<std::vector<double>> H(m + 1, std::vector<double>(m, 0.0));
  std::vector<double> cs(m), sn(m), g(m + 1), r(n), ax(n);
  std::vector<double> y(m);

  std::vector<double> rvec(b.begin(), b.end());
  double rnorm = bnorm;
  bool first_cycle = true;

  while (rep.iters < config.max_iters) {
    if (!first_cycle) {
      A.apply(result.x, ax);
      ++rep.operator_applications;
      for (std::size_t k = 0; k < n; ++k) rvec[k] = b[k] - ax[k];
      rnorm = norm(rvec);
      if (rnorm / bnorm <= config.tol) {
        rep.converged = true;
        break;
      }
    }
    first_cycle = false;
    const double cycle_start = rnorm;

    for (std::size_t k = 0; k < n; ++k) V[0][k] = rvec[k] / rnorm;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = rnorm;

    int j = 0;
    bool done = false;
    for (; j < m && rep.iters < config.max_iters; ++j) {
      auto& w = V[j + 1];
      A.apply(V[j], w);
      ++rep.operator_applications;
      ++rep.iters;
      const double wnorm0 = norm(w);
      for (int i = 0; i <= j; ++i) {
        H[i][j] = dot(w, V[i]);
        for (std::size_t k = 0; k < n; ++k) w[k] -= H[i][j] * V[i][k];
      }
      double wnorm = norm(w);
      double loss = 0.0;
      if (wnorm > 0.0)
        for (int i = 0; i <= j; ++i) loss = std::max(loss, std::abs(dot(w, V[i])) / wnorm);
      if (loss > 1e-8) {
        for (int i = 0; i <= j; ++i) {
          const double c = dot(w, V[i]);
          H[i][j] += c;
          for (std::size_t k = 0; k < n; ++k) w[k] -= c * V[i][k];
        }
        wnorm = norm(w);
      }
      H[j + 1][j] = wnorm;
      const bool breakdown = wnorm <= 1e-14 * std::max(wnorm0, 1.0);
      if (!breakdown)
        for (std::size_t k = 0; k < n; ++k) w[k] /= wnorm;

      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * H[i][j] + sn[i] * H[i + 1][j];
        H[i + 1][j] = -sn[i] * H[i][j] + cs[i] * H[i + 1][j];
        H[i][j] = t;
      }
      const double denom = std::hypot(H[j][j], H[j + 1][j]);
      cs[j] = denom == 0.0 ? 1.0 : H[j][j] / denom;
      sn[j] = denom == 0.0 ? 0.0 : H[j + 1][j] / denom;
      H[j][j] = denom;
      H[j + 1][j] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      rnorm = std::abs(g[j + 1]);
      const double rel = rnorm / bnorm;
      if (rel > rep.residual_history.back()) rep.non_monotone = true;
      rep.residual_history.push_back(rel);
      if (rel <= config.tol || breakdown) {
        rep.converged = true;
        done = true;
        ++j;
        break;
      }
    }

    // x += V y with H y = g on the leading j x j block.
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int k = i + 1; k < j; ++k) s -= H[i][k] * y[k];
      y[i] = H[i][i] == 0.0 ? 0.0 : s / H[i][i];
    }
    for (int i = 0; i < j; ++i)
      for (std::size_t k = 0; k < n; ++k) result.x[k] += y[i] * V[i][k];

    if (done) break;
    if (rnorm >= cycle_start * (1.0 - 1e-12)) break;  // no progress over a full cycle
  }

  rep.measured_rate = measured_rate(rep.residual_history);
  rep.wall_time = seconds_since(start);
  return result;
}

KrylovResult cg_solve(const LinearOperator& A, std::span<const double> b, const KrylovConfig& config) {
  validate(A, b, config);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = A.dim;
  KrylovResult result;
  result.x.assign(n, 0.0);
  auto& rep = result.report;

  const double bnorm = norm(b);
  if (bnorm == 0.0) {
    rep.residual_history = {0.0};
    rep.converged = true;
    rep.measured_rate = measured_rate(rep.residual_history);
    rep.wall_time = seconds_since(start);
    return result;
  }
  rep.residual_history.push_back(1.0);

  std::vector<double> r(b.begin(), b.end()), p = r, ap(n);
  double rr = dot(r, r);
  while (rep.iters < config.max_iters) {
    A.apply(p, ap);
    ++rep.operator_applications;
    ++rep.iters;
    const double pap = dot(p, ap);
    if (!(pap > 0.0))
      throw IndefiniteOperatorError("CG found a direction with <Ap, p> <= 0 at iteration " +
                                    std::to_string(rep.iters));
    const double alpha = rr / pap;
    for (std::size_t k = 0; k < n; ++k) {
      result.x[k] += alpha * p[k];
      r[k] -= alpha * ap[k];
    }
    const double rr_new = dot(r, r);
    const double rel = std::sqrt(rr_new) / bnorm;
    if (rel > rep.residual_history.back()) rep.non_monotone = true;
    rep.residual_history.push_back(rel);
    if (rel <= config.tol) {
      rep.converged = true;
      break;
    }
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
  }

  rep.measured_rate = measured_rate(rep.residual_history);
  rep.wall_time = seconds_since(start);
  return result;
}

KrylovResult krylov_solve(const LinearOperator& A, std::span<const double> b,
                          const KrylovConfig& config) {
  return config.method == KrylovMethod::CG ? cg_solve(A, b, config) : gmres_solve(A, b, config);
}

double linearity_defect(const LinearOperator& A, int probes, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  const std::size_t n = A.dim;
  std::vector<double> x(n), y(n), z(n), ax(n), ay(n), az(n);
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = normal(rng);
      y[k] = normal(rng);
    }
    const double a = normal(rng);
    const double c = normal(rng);
    for (std::size_t k = 0; k < n; ++k) z[k] = a * x[k] + c * y[k];
    A.apply(x, ax);
    A.apply(y, ay);
    A.apply(z, az);
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double expect = a * ax[k] + c * ay[k];
      diff += (az[k] - expect) * (az[k] - expect);
      scale += expect * expect;
    }
    worst = std::max(worst, std::sqrt(diff) / std::max(std::sqrt(scale), 1e-300));
  }
  return worst;
}

}  // namespace waveholtz
