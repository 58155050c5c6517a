#include "waveholtz/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "waveholtz/errors.hpp"

namespace waveholtz {

using std::numbers::pi;

TimeGrid::TimeGrid(double omega, int periods, int steps, double period)
    : omega_(omega), periods_(periods), steps_(steps), period_(period), dt_(period / steps) {}

TimeGrid TimeGrid::make(double omega, int periods, int steps) {
  if (!(omega > 0.0)) throw DomainError("time grid frequency must be positive");
  if (periods < 1) throw DomainError("time grid needs at least one period");
  if (steps < 1) throw DomainError("time grid needs at least one step");
  return TimeGrid(omega, periods, steps, periods * 2.0 * pi / omega);
}

TimeGrid TimeGrid::with_max_step(double omega, int periods, double dt_max) {
  if (!(dt_max > 0.0)) throw DomainError("maximum time step must be positive");
  const double period = periods * 2.0 * pi / omega;
  const int steps = static_cast<int>(std::ceil(period / dt_max - 1e-12));
  return make(omega, periods, std::max(steps, 1));
}

TimeGrid TimeGrid::corrected(double omega, int periods, int steps) {
  if (!(omega > 0.0)) throw DomainError("time grid frequency must be positive");
  if (periods < 1 || steps < 2 * periods)
    throw DomainError("corrected time grid needs at least two steps per period");
  // dt * omega_bar = 2 pi K / M is fixed by M, and sin(dt omega_bar / 2) = dt omega / 2.
  const double dt = 2.0 * std::sin(pi * periods / steps) / omega;
  const double period = steps * dt;
  return TimeGrid(periods * 2.0 * pi / period, periods, steps, period);
}

int TimeGrid::nearest_step(double t) const {
  const long n = std::lround(t / dt_);
  return static_cast<int>(std::clamp<long>(n, 0, steps_));
}

FilterSpec FilterSpec::standard(double omega, int periods) {
  return multi_frequency({omega}, periods);
}

FilterSpec FilterSpec::multi_frequency(std::vector<double> omegas, int periods) {
  if (omegas.empty()) throw DomainError("filter needs at least one frequency");
  if (periods < 1) throw DomainError("filter needs at least one period");
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (!(omegas[i] > 0.0)) throw DomainError("filter frequencies must be positive");
    if (i > 0 && !(omegas[i] > omegas[i - 1]))
      throw DomainError("filter frequencies must be strictly increasing");
  }
  FilterSpec spec;
  spec.kind_ = FilterKind::Standard;
  spec.frequencies_ = std::move(omegas);
  spec.periods_ = periods;
  return spec;
}

FilterSpec FilterSpec::tunable(double omega, int periods, double a0, std::vector<double> higher) {
  if (!(omega > 0.0)) throw DomainError("filter frequency must be positive");
  if (periods < 1) throw DomainError("filter needs at least one period");
  if (!(std::abs(a0) < 0.5)) throw DomainError("tunable filter requires |a0| < 1/2");
  FilterSpec spec;
  spec.kind_ = FilterKind::Tunable;
  spec.frequencies_ = {omega};
  spec.periods_ = periods;
  spec.a0_ = a0;
  spec.sines_.reserve(higher.size() + 1);
  // beta'(omega) = 0 over K periods.
  spec.sines_.push_back((1.0 + 4.0 * a0) / (2.0 * pi * periods));
  spec.sines_.insert(spec.sines_.end(), higher.begin(), higher.end());
  return spec;
}

FilterSpec& FilterSpec::with_shift(double shift) {
  if (kind_ != FilterKind::Standard) throw DomainError("only standard filters take a shift");
  shift_ = shift;
  return *this;
}

double FilterSpec::weight(double t) const {
  if (kind_ == FilterKind::Standard) {
    double sum = -shift_;
    for (double w : frequencies_) sum += std::cos(w * t);
    return sum;
  }
  const double w = frequencies_.front();
  double sum = std::cos(w * t) + a0_;
  for (std::size_t n = 0; n < sines_.size(); ++n) sum += sines_[n] * std::sin((n + 1) * w * t);
  return sum;
}

double sinc(double r) {
  const double x = 2.0 * pi * r;
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  // reduce by half periods so integer r gives an exact zero
  const double k = std::nearbyint(2.0 * r);
  const double s = std::sin(2.0 * pi * (r - 0.5 * k));
  return (std::fmod(k, 2.0) == 0.0 ? s : -s) / x;
}

double beta_continuous(double r) {
  if (!(r >= 0.0)) throw DomainError("beta_continuous needs r >= 0");
  return sinc(r + 1.0) + sinc(r - 1.0) - 0.5 * sinc(r);
}

double beta_continuous(double r, const FilterSpec& spec) {
  if (spec.kind() != FilterKind::Standard || spec.frequencies().size() != 1 || spec.periods() != 1)
    throw DomainError("closed-form beta only covers the one-period single-frequency standard filter");
  if (!(r >= 0.0)) throw DomainError("beta_continuous needs r >= 0");
  return sinc(r + 1.0) + sinc(r - 1.0) - 2.0 * spec.shift() * sinc(r);
}

namespace {

// (2 dt / T) sum_n eta_n g(t_n) weight(t_n)
template <class G>
double filter_quadrature(const FilterSpec& spec, const TimeGrid& tg, G&& g) {
  long double sum = 0.0L;
  const int m = tg.steps();
  for (int n = 0; n <= m; ++n) {
    const double t = tg.time(n);
    sum += static_cast<long double>(tg.eta(n) * g(t) * spec.weight(t));
  }
  return static_cast<double>(sum * (2.0L * tg.dt() / tg.period()));
}

}  // namespace

double beta_by_quadrature(double lambda, const FilterSpec& spec, const TimeGrid& tg) {
  return filter_quadrature(spec, tg, [lambda](double t) { return std::cos(lambda * t); });
}

double tunable_beta(double lambda, const FilterSpec& spec, const TimeGrid& tg) {
  if (spec.kind() != FilterKind::Tunable) throw DomainError("tunable_beta needs a tunable filter");
  return beta_by_quadrature(lambda, spec, tg);
}

double beta_second_derivative(const FilterSpec& spec, double lambda, const TimeGrid& tg) {
  return filter_quadrature(spec, tg,
                           [lambda](double t) { return -t * t * std::cos(lambda * t); });
}

double shifted_eigenfrequency(double lambda, double dt) {
  const double x = 0.5 * dt * lambda;
  if (x > 1.0)
    throw DomainError("time step violates the CFL limit for lambda_j = " + std::to_string(lambda));
  return 2.0 / dt * std::asin(x);
}

double beta_discrete_at_mode(double lambda_j, double omega, const TimeGrid& tg) {
  return beta_discrete_at_mode(lambda_j, FilterSpec::standard(omega, tg.periods()), tg);
}

double beta_discrete_at_mode(double lambda_j, const FilterSpec& spec, const TimeGrid& tg) {
  return beta_by_quadrature(shifted_eigenfrequency(lambda_j, tg.dt()), spec, tg);
}

double modified_frequency(double omega, double dt) {
  if (!(dt > 0.0) || !(dt * omega < pi))
    throw DomainError("modified_frequency requires 0 < dt * omega < pi");
  return 2.0 * std::sin(0.5 * dt * omega) / dt;
}

double corrected_forcing_frequency(double omega, double dt) {
  if (!(dt > 0.0) || !(dt * omega <= 2.0))
    throw DomainError("corrected_forcing_frequency requires dt * omega <= 2");
  return 2.0 / dt * std::asin(0.5 * dt * omega);
}

double fixed_point_rate_bound(double delta_h) {
  if (!(delta_h > 0.0)) throw ResonanceError("delta_h <= 0: omega is resonant");
  return std::max(1.0 - 0.3 * delta_h * delta_h, 0.6);
}

CflReport cfl_check(double omega, double dt, double lambda_max, std::optional<double> delta_h) {
  if (!(lambda_max >= 0.0)) throw DomainError("lambda_max must be non-negative");
  CflReport report;
  report.stability_limit = 2.0 / (lambda_max + 2.0 * omega / pi);
  report.stable = dt < report.stability_limit;
  if (delta_h) {
    const double bound = std::min(*delta_h, 1.0);
    report.accuracy_limit = bound / omega;
    report.guaranteed = dt * omega <= bound;
  }
  return report;
}

}  // namespace waveholtz
