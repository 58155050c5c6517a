#include "waveholtz/tunable.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "waveholtz/errors.hpp"

namespace waveholtz {

namespace {

using std::numbers::pi;

double power(double x, int e) {
  double r = 1.0;
  for (; e > 0; e >>= 1, x *= x)
    if (e & 1) r *= x;
  return r;
}

// beta_h and beta_h'' are linear in the filter coefficients, so every sample
// point reduces to a dot product with precomputed basis projections.
// Basis order: cos(omega t), 1, sin(omega t), ..., sin(N omega t).
class FilterModel {
 public:
  FilterModel(double omega, int n_sines, double resonant_lambda, const TimeGrid& tg,
              const TunableCostOptions& opt)
      : omega_(omega), periods_(tg.periods()), n_basis_(2 + n_sines), opt_(opt) {
    const double hi = opt.sample_hi > 0.0 ? opt.sample_hi : std::max(4.0 * resonant_lambda, pi / tg.dt());
    const int m = tg.steps();
    std::vector<double> basis(static_cast<std::size_t>(n_basis_) * (m + 1));
    const double scale = 2.0 * tg.dt() / tg.period();
    for (int n = 0; n <= m; ++n) {
      const double t = tg.time(n);
      double* b = basis.data() + static_cast<std::size_t>(n) * n_basis_;
      const double w = scale * tg.eta(n);
      b[0] = w * std::cos(omega * t);
      b[1] = w;
      for (int k = 1; k <= n_sines; ++k) b[1 + k] = w * std::sin(k * omega * t);
    }
    auto project = [&](double lambda, bool second) {
      std::vector<double> row(n_basis_, 0.0);
      for (int n = 0; n <= m; ++n) {
        const double t = tg.time(n);
        const double g = second ? -t * t * std::cos(lambda * t) : std::cos(lambda * t);
        const double* b = basis.data() + static_cast<std::size_t>(n) * n_basis_;
        for (int q = 0; q < n_basis_; ++q) row[q] += g * b[q];
      }
      return row;
    };
    curvature_ = project(resonant_lambda, true);
    const int samples =
        opt.samples > 0 ? std::max(opt.samples, 2)
                        : static_cast<int>(std::ceil(hi / (4.0 * resonant_lambda / 800.0))) + 1;
    for (int s = 0; s < samples; ++s) {
      const double r = hi * s / (samples - 1);
      if (std::abs(r - resonant_lambda) > opt.exclusion) {
        const auto row = project(r, false);
        penalty_rows_.insert(penalty_rows_.end(), row.begin(), row.end());
      }
    }
  }

  int free_dim() const { return n_basis_ - 2; }  // a0 plus a_2..a_N

  // Full coefficient vector from the free parameters (a0, a_2, ...).
  std::vector<double> coefficients(const double* x) const {
    std::vector<double> c(n_basis_, 0.0);
    c[0] = 1.0;
    c[1] = x[0];
    c[2] = (1.0 + 4.0 * x[0]) / (2.0 * pi * periods_);
    for (int q = 3; q < n_basis_; ++q) c[q] = x[q - 2];
    return c;
  }

  double cost(const double* x) const {
    if (!(std::abs(x[0]) < 0.5)) return std::numeric_limits<double>::max();
    const auto c = coefficients(x);
    double curvature = 0.0;
    for (int q = 0; q < n_basis_; ++q) curvature += curvature_[q] * c[q];
    double penalty = 0.0;
    for (std::size_t i = 0; i < penalty_rows_.size(); i += n_basis_) {
      const double* row = penalty_rows_.data() + i;
      double beta = 0.0;
      for (int q = 0; q < n_basis_; ++q) beta += row[q] * c[q];
      penalty += power(std::abs(beta), opt_.exponent);
    }
    return opt_.curvature_weight * curvature + opt_.penalty_weight * penalty;
  }

  FilterSpec spec(const double* x) const {
    std::vector<double> higher(x + 1, x + free_dim());
    return FilterSpec::tunable(omega_, periods_, x[0], std::move(higher));
  }

 private:
  double omega_;
  int periods_;
  int n_basis_;
  TunableCostOptions opt_;
  std::vector<double> curvature_;
  std::vector<double> penalty_rows_;  // row-major, n_basis_ per sample
};

double gsl_cost(const gsl_vector* x, void* params) {
  const auto* model = static_cast<const FilterModel*>(params);
  return model->cost(gsl_vector_const_ptr(x, 0));
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

std::vector<double> nelder_mead(const FilterModel& model, std::vector<double> start, double step,
                                int budget) {
  const std::size_t dim = start.size();
  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(dim));
  std::unique_ptr<gsl_vector, VectorDeleter> steps(gsl_vector_alloc(dim));
  for (std::size_t k = 0; k < dim; ++k) gsl_vector_set(x.get(), k, start[k]);
  gsl_vector_set_all(steps.get(), step);

  gsl_multimin_function fn;
  fn.n = dim;
  fn.f = &gsl_cost;
  fn.params = const_cast<FilterModel*>(&model);

  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> minimizer(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim));
  gsl_multimin_fminimizer_set(minimizer.get(), &fn, x.get(), steps.get());
  for (int it = 0; it < budget; ++it) {
    if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(minimizer.get()), 1e-12) == GSL_SUCCESS)
      break;
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(minimizer.get());
  std::vector<double> out(dim);
  for (std::size_t k = 0; k < dim; ++k) out[k] = gsl_vector_get(best, k);
  return out;
}

}  // namespace

double tunable_cost(const FilterSpec& spec, double resonant_lambda, const TimeGrid& tg,
                    const TunableCostOptions& options) {
  const int n_sines = spec.kind() == FilterKind::Tunable
                          ? static_cast<int>(spec.sine_coefficients().size())
                          : 1;
  FilterModel model(spec.omega(), std::max(n_sines, 1), resonant_lambda, tg, options);
  std::vector<double> x(model.free_dim(), 0.0);
  if (spec.kind() == FilterKind::Tunable) {
    x[0] = spec.a0();
    const auto& s = spec.sine_coefficients();
    for (std::size_t k = 1; k < s.size(); ++k) x[k] = s[k];
  } else {
    if (spec.frequencies().size() != 1 || spec.shift() != 0.25)
      throw DomainError("design cost needs a single-frequency standard or tunable filter");
    x[0] = -0.25;
  }
  return model.cost(x.data());
}

TunableDesign optimize_tunable_filter(double omega, double resonant_lambda, int n_coeffs,
                                      const TimeGrid& tg, const TunableCostOptions& options) {
  if (n_coeffs < 2) throw DomainError("tunable filter needs at least two coefficients");
  if (resonant_lambda == omega) throw DomainError("resonant_lambda must differ from omega");

  gsl_set_error_handler_off();
  const FilterModel model(omega, n_coeffs - 1, resonant_lambda, tg, options);
  const int dim = model.free_dim();
  const int budget = options.budget_per_dim * dim;

  std::vector<double> standard(dim, 0.0);
  standard[0] = -0.25;
  const double baseline = model.cost(standard.data());

  std::vector<double> best = standard;
  double best_cost = baseline;
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> jitter(0.0, options.restart_scale);

  for (int r = 0; r <= options.restarts; ++r) {
    std::vector<double> start = standard;
    if (r > 0) {
      for (double& v : start) v += jitter(rng);
      start[0] = std::clamp(start[0], -0.45, 0.45);
    }
    // Continue from the incumbent once before restarting elsewhere.
    auto x = nelder_mead(model, start, 0.05, budget);
    x = nelder_mead(model, x, 0.01, budget);
    const double c = model.cost(x.data());
    if (c < best_cost) {
      best_cost = c;
      best = std::move(x);
    }
  }

  TunableDesign design{model.spec(best.data()), best_cost, baseline, best_cost < baseline};
  return design;
}

}  // namespace waveholtz
