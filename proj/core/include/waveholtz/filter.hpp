#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace waveholtz {

/// Uniform time grid over K periods of the base frequency, T = K 2pi / omega,
/// dt = T / M, with trapezoid weights eta_n.
class TimeGrid {
 public:
  static TimeGrid make(double omega, int periods, int steps);
  /// Smallest M with T / M <= dt_max.
  static TimeGrid with_max_step(double omega, int periods, double dt_max);
  /// Grid whose frequency omega_bar satisfies modified_frequency(omega_bar, dt) == omega
  /// exactly for the M steps requested; omega() then reports omega_bar.
  static TimeGrid corrected(double omega, int periods, int steps);

  double omega() const noexcept { return omega_; }
  int periods() const noexcept { return periods_; }
  int steps() const noexcept { return steps_; }
  double period() const noexcept { return period_; }
  double dt() const noexcept { return dt_; }

  double time(int n) const noexcept { return n * dt_; }
  double eta(int n) const noexcept { return (n == 0 || n == steps_) ? 0.5 : 1.0; }
  /// Step index nearest to time t, clamped to [0, M].
  int nearest_step(double t) const;

 private:
  TimeGrid(double omega, int periods, int steps, double period);

  double omega_;
  int periods_;
  int steps_;
  double period_;
  double dt_;
};

enum class FilterKind { Standard, Tunable };

/// Filter weight in Pi v = (2/T) int_0^T weight(t) w(t) dt.
///
/// Standard: sum_i cos(omega_i t) - shift, shift = 1/4 by default (one
/// frequency in the usual case, several for multi-frequency solves).
/// Tunable: cos(omega t) + a0 + sum_{n>=1} a_n sin(n omega t), with
/// |a0| < 1/2 and a_1 = (1 + 4 a0) / (2 pi K) fixed by a0.
class FilterSpec {
 public:
  static FilterSpec standard(double omega, int periods = 1);
  static FilterSpec multi_frequency(std::vector<double> omegas, int periods = 1);
  /// `higher` holds a_2, a_3, ...; a_1 is derived from a0.
  static FilterSpec tunable(double omega, int periods, double a0, std::vector<double> higher = {});

  FilterKind kind() const noexcept { return kind_; }
  double omega() const noexcept { return frequencies_.front(); }
  const std::vector<double>& frequencies() const noexcept { return frequencies_; }
  int periods() const noexcept { return periods_; }

  /// Constant subtracted from the cosine sum (Standard only).
  double shift() const noexcept { return shift_; }
  FilterSpec& with_shift(double shift);

  double a0() const noexcept { return a0_; }
  /// Sine amplitudes a_1..a_N (Tunable only).
  const std::vector<double>& sine_coefficients() const noexcept { return sines_; }

  double weight(double t) const;

 private:
  FilterSpec() = default;

  FilterKind kind_ = FilterKind::Standard;
  std::vector<double> frequencies_;
  int periods_ = 1;
  double shift_ = 0.25;
  double a0_ = -0.25;
  std::vector<double> sines_;
};

/// sin(2 pi r) / (2 pi r) with the removable singularity at r = 0.
double sinc(double r);

/// Closed-form one-period transfer function of the standard filter in the
/// normalized variable r = lambda / omega.
double beta_continuous(double r);
double beta_continuous(double r, const FilterSpec& spec);

/// Trapezoid-rule transfer function beta_h(lambda) = (2 dt / T) sum eta_n cos(lambda t_n) weight(t_n).
double beta_by_quadrature(double lambda, const FilterSpec& spec, const TimeGrid& tg);
/// Same as beta_by_quadrature, restricted to tunable specs.
double tunable_beta(double lambda, const FilterSpec& spec, const TimeGrid& tg);

/// Second lambda-derivative of beta_h, -(2 dt / T) sum eta_n t_n^2 cos(lambda t_n) weight(t_n).
double beta_second_derivative(const FilterSpec& spec, double lambda, const TimeGrid& tg);

/// (2 / dt) asin(dt lambda / 2); the frequency a leapfrog mode with L_h eigenvalue
/// lambda^2 actually oscillates at.
double shifted_eigenfrequency(double lambda, double dt);

/// beta_h at the shifted eigenfrequency of mode lambda_j, for the standard filter.
double beta_discrete_at_mode(double lambda_j, double omega, const TimeGrid& tg);
double beta_discrete_at_mode(double lambda_j, const FilterSpec& spec, const TimeGrid& tg);

/// 2 sin(dt omega / 2) / dt.
double modified_frequency(double omega, double dt);
/// (2 / dt) asin(dt omega / 2); inverse of modified_frequency.
double corrected_forcing_frequency(double omega, double dt);

/// max(1 - 0.3 delta_h^2, 0.6).
double fixed_point_rate_bound(double delta_h);

struct CflReport {
  bool stable = false;               // dt < 2 / (lambda_N + 2 omega / pi)
  std::optional<bool> guaranteed;    // dt omega <= min(delta_h, 1); empty when delta_h unknown
  double stability_limit = 0.0;
  std::optional<double> accuracy_limit;
};

CflReport cfl_check(double omega, double dt, double lambda_max, std::optional<double> delta_h);

}  // namespace waveholtz
