#pragma once

#include <span>
#include <utility>
#include <vector>

#include "waveholtz/filter.hpp"
#include "waveholtz/laplacian.hpp"
#include "waveholtz/problem.hpp"

namespace waveholtz {

enum class Scheme { Leapfrog, RK4 };

/// Harmonic drive sum_i f_i cos(omega_i t).
///
/// With `corrected` set, each omega_i is replaced by the frequency
/// (2/dt) asin(dt omega_i / 2) so a leapfrog limit solves the unmodified
/// discrete Helmholtz equation.
struct ForcingSchedule {
  std::vector<ScalarField> forcings;
  std::vector<double> frequencies;
  bool corrected = false;

  static ForcingSchedule single(const HelmholtzProblem& problem, bool corrected = false);
  static ForcingSchedule multi(std::vector<ScalarField> forcings, std::vector<double> frequencies);

  bool empty() const noexcept { return forcings.empty(); }
  double drive_frequency(std::size_t i, double dt) const;
  /// out += scale * sum_i f_i cos(drive_frequency_i t)
  void accumulate(double t, double dt, double scale, std::span<double> out) const;
};

/// Leapfrog start values w^0 = v, w^{-1} = v - dt^2/2 (L_h v + drive(0)).
std::pair<ScalarField, ScalarField> leapfrog_initialize(const ScalarField& v,
                                                        const ForcingSchedule& schedule,
                                                        const HelmholtzProblem& problem,
                                                        double dt);

/// w^{n+1} = 2 w^n - w^{n-1} - dt^2 L_h w^n - dt^2 drive(t_n).
ScalarField leapfrog_step(const ScalarField& w_n, const ScalarField& w_nm1, double t_n,
                          const ForcingSchedule& schedule, const HelmholtzProblem& problem,
                          double dt);

/// (dw/dt, dv/dt) = (v, -L_h w - drive(t)) with impedance ghosts from v.
std::pair<ScalarField, ScalarField> first_order_rhs(const WaveState& state, double t,
                                                    const ForcingSchedule& schedule,
                                                    const HelmholtzProblem& problem, double dt);

/// One classic four-stage Runge-Kutta step of the first-order system.
WaveState rk4_step(const WaveState& state, double dt, const ForcingSchedule& schedule,
                   const HelmholtzProblem& problem);

struct FilterResult {
  /// Filtered displacement (and velocity for RK4; zero for leapfrog).
  WaveState filtered;
  /// Displacement at the requested sample times, snapped to the time grid.
  std::vector<ScalarField> samples;
  std::vector<double> sample_times;
};

/// Reusable evolve-and-filter kernel with preallocated buffers.
///
/// Runs the wave equation over [0, T] from (w0, v0) and returns the trapezoid
/// filter sum (2 dt / T) sum eta_n weight(t_n) (w^n, v^n). The leapfrog scheme
/// ignores v0 and starts at rest. Not safe to share between threads.
class WaveEvolver {
 public:
  WaveEvolver(const HelmholtzProblem& problem, ForcingSchedule schedule, TimeGrid tg,
              FilterSpec spec, Scheme scheme);

  const HelmholtzProblem& problem() const noexcept { return problem_; }
  const TimeGrid& time_grid() const noexcept { return tg_; }
  const FilterSpec& filter() const noexcept { return spec_; }
  Scheme scheme() const noexcept { return scheme_; }

  /// fw, fv receive the filtered pair (fv untouched for leapfrog). Sample
  /// steps must be ascending; each sample receives w at that step.
  void run(std::span<const double> w0, std::span<const double> v0, std::span<double> fw,
           std::span<double> fv, bool forced, std::span<const int> sample_steps = {},
           std::vector<std::vector<double>>* samples = nullptr) const;

 private:
  void run_leapfrog(std::span<const double> w0, std::span<double> fw, bool forced,
                    std::span<const int> sample_steps,
                    std::vector<std::vector<double>>* samples) const;
  void run_rk4(std::span<const double> w0, std::span<const double> v0, std::span<double> fw,
               std::span<double> fv, bool forced, std::span<const int> sample_steps,
               std::vector<std::vector<double>>* samples) const;
  void rhs(std::span<const double> w, std::span<const double> v, double t, bool forced,
           std::span<double> dw, std::span<double> dv) const;

  HelmholtzProblem problem_;
  ForcingSchedule schedule_;
  TimeGrid tg_;
  FilterSpec spec_;
  Scheme scheme_;
  DiscreteLaplacian laplacian_;
  mutable std::vector<std::vector<double>> work_;
};

/// Evolves over one filter window and filters; the trajectory is not stored.
FilterResult evolve_and_filter(const WaveState& initial, const ForcingSchedule& schedule,
                               const HelmholtzProblem& problem, const TimeGrid& tg,
                               const FilterSpec& spec, Scheme scheme,
                               std::span<const double> sample_times = {});

}  // namespace waveholtz
