#include "waveholtz/wave_solver.hpp"

#include <algorithm>
#include <cmath>

#include "waveholtz/errors.hpp"

namespace waveholtz {

namespace {

enum Buffer { kPrev, kCur, kNext, kLap, kW, kV, kK1w, kK1v, kK2w, kK2v, kK3w, kK3v, kK4w, kK4v, kCount };

void check_finite(double checksum, std::size_t step) {
  if (!std::isfinite(checksum)) throw InstabilityError("non-finite values while time stepping", step);
}

void require_no_impedance(const HelmholtzProblem& problem) {
  if (problem.bcs().has(BoundaryCondition::Impedance))
    throw UnsupportedError("leapfrog needs energy-conserving boundary conditions; use RK4 for impedance");
}

}  // namespace

ForcingSchedule ForcingSchedule::single(const HelmholtzProblem& problem, bool corrected) {
  ForcingSchedule s;
  s.forcings.push_back(problem.forcing());
  s.frequencies.push_back(problem.omega());
  s.corrected = corrected;
  return s;
}

ForcingSchedule ForcingSchedule::multi(std::vector<ScalarField> forcings,
                                       std::vector<double> frequencies) {
  if (forcings.size() != frequencies.size())
    throw StructuralError("one forcing per frequency is required");
  for (std::size_t i = 1; i < forcings.size(); ++i) {
    if (!(forcings[i].grid() == forcings[0].grid()))
      throw StructuralError("all forcings must live on the same grid");
    if (!(frequencies[i] > frequencies[i - 1]))
      throw DomainError("frequencies must be strictly increasing");
  }
  ForcingSchedule s;
  s.forcings = std::move(forcings);
  s.frequencies = std::move(frequencies);
  return s;
}

double ForcingSchedule::drive_frequency(std::size_t i, double dt) const {
  return corrected ? corrected_forcing_frequency(frequencies[i], dt) : frequencies[i];
}

void ForcingSchedule::accumulate(double t, double dt, double scale, std::span<double> out) const {
  for (std::size_t i = 0; i < forcings.size(); ++i) {
    const double c = scale * std::cos(drive_frequency(i, dt) * t);
    const auto f = forcings[i].values();
    if (f.size() != out.size()) throw StructuralError("forcing and state sizes differ");
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * f[k];
  }
}

std::pair<ScalarField, ScalarField> leapfrog_initialize(const ScalarField& v,
                                                        const ForcingSchedule& schedule,
                                                        const HelmholtzProblem& problem,
                                                        double dt) {
  require_no_impedance(problem);
  ScalarField lv = apply_discrete_laplacian(problem, v);
  schedule.accumulate(0.0, dt, 1.0, lv.values());
  ScalarField wm1 = v;
  wm1.axpy(-0.5 * dt * dt, lv);
  problem.zero_dirichlet(wm1);
  return {v, std::move(wm1)};
}

ScalarField leapfrog_step(const ScalarField& w_n, const ScalarField& w_nm1, double t_n,
                          const ForcingSchedule& schedule, const HelmholtzProblem& problem,
                          double dt) {
  require_no_impedance(problem);
  ScalarField next = apply_discrete_laplacian(problem, w_n);
  schedule.accumulate(t_n, dt, 1.0, next.values());
  double checksum = 0.0;
  for (std::size_t k = 0; k < next.size(); ++k) {
    next[k] = 2.0 * w_n[k] - w_nm1[k] - dt * dt * next[k];
    checksum += next[k];
  }
  check_finite(checksum, 0);
  problem.zero_dirichlet(next);
  return next;
}

std::pair<ScalarField, ScalarField> first_order_rhs(const WaveState& state, double t,
                                                    const ForcingSchedule& schedule,
                                                    const HelmholtzProblem& problem, double dt) {
  const DiscreteLaplacian lap(problem);
  ScalarField dv(problem.grid());
  lap.apply(state.w.values(), dv.values(), state.v.values());
  schedule.accumulate(t, dt, 1.0, dv.values());
  dv *= -1.0;
  ScalarField dw = state.v;
  problem.zero_dirichlet(dw);
  problem.zero_dirichlet(dv);
  return {std::move(dw), std::move(dv)};
}

WaveState rk4_step(const WaveState& state, double dt, const ForcingSchedule& schedule,
                   const HelmholtzProblem& problem) {
  auto stage = [&](const WaveState& s, double t) { return first_order_rhs(s, t, schedule, problem, dt); };
  const double t = state.t;
  auto [k1w, k1v] = stage(state, t);
  auto [k2w, k2v] = stage(WaveState(state.w + (0.5 * dt) * k1w, state.v + (0.5 * dt) * k1v), t + 0.5 * dt);
  auto [k3w, k3v] = stage(WaveState(state.w + (0.5 * dt) * k2w, state.v + (0.5 * dt) * k2v), t + 0.5 * dt);
  auto [k4w, k4v] = stage(WaveState(state.w + dt * k3w, state.v + dt * k3v), t + dt);
  WaveState out = state;
  const double s = dt / 6.0;
  double checksum = 0.0;
  for (std::size_t k = 0; k < out.w.size(); ++k) {
    out.w[k] += s * (k1w[k] + 2.0 * k2w[k] + 2.0 * k3w[k] + k4w[k]);
    out.v[k] += s * (k1v[k] + 2.0 * k2v[k] + 2.0 * k3v[k] + k4v[k]);
    checksum += out.w[k] + out.v[k];
  }
  check_finite(checksum, 0);
  out.t = t + dt;
  return out;
}

WaveEvolver::WaveEvolver(const HelmholtzProblem& problem, ForcingSchedule schedule, TimeGrid tg,
                         FilterSpec spec, Scheme scheme)
    : problem_(problem),
      schedule_(std::move(schedule)),
      tg_(tg),
      spec_(std::move(spec)),
      scheme_(scheme),
      laplacian_(problem_) {
  if (scheme_ == Scheme::Leapfrog) require_no_impedance(problem_);
  for (auto& f : schedule_.forcings) {
    if (!(f.grid() == problem_.grid())) throw StructuralError("forcing grid does not match the problem");
    problem_.zero_dirichlet(f);
  }
  const int buffers = scheme_ == Scheme::Leapfrog ? kW : kCount;
  work_.assign(buffers, std::vector<double>(problem_.grid().node_count(), 0.0));
}

void WaveEvolver::run(std::span<const double> w0, std::span<const double> v0, std::span<double> fw,
                      std::span<double> fv, bool forced, std::span<const int> sample_steps,
                      std::vector<std::vector<double>>* samples) const {
  const std::size_t n = problem_.grid().node_count();
  if (w0.size() != n || fw.size() != n) throw StructuralError("state size does not match the grid");
  if (!std::is_sorted(sample_steps.begin(), sample_steps.end()))
    throw DomainError("sample steps must be ascending");
  for (int s : sample_steps)
    if (s < 0 || s > tg_.steps()) throw DomainError("sample step outside the time window");
  if (samples) samples->assign(sample_steps.size(), std::vector<double>());
  if (scheme_ == Scheme::Leapfrog) {
    run_leapfrog(w0, fw, forced, sample_steps, samples);
  } else {
    if (v0.size() != n || fv.size() != n) throw StructuralError("state size does not match the grid");
    run_rk4(w0, v0, fw, fv, forced, sample_steps, samples);
  }
}

void WaveEvolver::run_leapfrog(std::span<const double> w0, std::span<double> fw, bool forced,
                               std::span<const int> sample_steps,
                               std::vector<std::vector<double>>* samples) const {
  auto* prev = &work_[kPrev];
  auto* cur = &work_[kCur];
  auto* next = &work_[kNext];
  auto& lap = work_[kLap];
  const std::size_t n = lap.size();
  const double dt = tg_.dt();
  const double dt2 = dt * dt;
  const double scale = 2.0 * dt / tg_.period();
  const int steps = tg_.steps();
  std::size_t next_sample = 0;

  auto record = [&](int step, const std::vector<double>& w) {
    while (next_sample < sample_steps.size() && sample_steps[next_sample] == step) {
      if (samples) (*samples)[next_sample] = w;
      ++next_sample;
    }
  };

  std::copy(w0.begin(), w0.end(), cur->begin());
  problem_.zero_dirichlet(*cur);
  laplacian_.apply(*cur, lap);
  if (forced) schedule_.accumulate(0.0, dt, 1.0, lap);
  for (std::size_t k = 0; k < n; ++k) (*prev)[k] = (*cur)[k] - 0.5 * dt2 * lap[k];
  problem_.zero_dirichlet(*prev);

  double c = scale * tg_.eta(0) * spec_.weight(0.0);
  for (std::size_t k = 0; k < n; ++k) fw[k] = c * (*cur)[k];
  record(0, *cur);

  for (int step = 0; step < steps; ++step) {
    const double t = tg_.time(step);
    laplacian_.apply(*cur, lap);
    if (forced) schedule_.accumulate(t, dt, 1.0, lap);
    const double t1 = tg_.time(step + 1);
    c = scale * tg_.eta(step + 1) * spec_.weight(t1);
    double checksum = 0.0;
    auto& nx = *next;
    const auto& cu = *cur;
    const auto& pv = *prev;
    for (std::size_t k = 0; k < n; ++k) {
      const double v = 2.0 * cu[k] - pv[k] - dt2 * lap[k];
      nx[k] = v;
      fw[k] += c * v;
      checksum += v;
    }
    check_finite(checksum, static_cast<std::size_t>(step + 1));
    record(step + 1, nx);
    std::swap(prev, cur);
    std::swap(cur, next);
  }
}

void WaveEvolver::rhs(std::span<const double> w, std::span<const double> v, double t, bool forced,
                      std::span<double> dw, std::span<double> dv) const {
  laplacian_.apply(w, dv, laplacian_.has_impedance() ? v : std::span<const double>{});
  if (forced) schedule_.accumulate(t, tg_.dt(), 1.0, dv);
  for (std::size_t k = 0; k < dv.size(); ++k) {
    dv[k] = -dv[k];
    dw[k] = v[k];
  }
  problem_.zero_dirichlet(dw);
  problem_.zero_dirichlet(dv);
}

void WaveEvolver::run_rk4(std::span<const double> w0, std::span<const double> v0,
                          std::span<double> fw, std::span<double> fv, bool forced,
                          std::span<const int> sample_steps,
                          std::vector<std::vector<double>>* samples) const {
  auto& w = work_[kCur];
  auto& v = work_[kPrev];
  auto& tw = work_[kW];
  auto& tv = work_[kV];
  auto& k1w = work_[kK1w];
  auto& k1v = work_[kK1v];
  auto& k2w = work_[kK2w];
  auto& k2v = work_[kK2v];
  auto& k3w = work_[kK3w];
  auto& k3v = work_[kK3v];
  auto& k4w = work_[kK4w];
  auto& k4v = work_[kK4v];
  const std::size_t n = w.size();
  const double dt = tg_.dt();
  const double scale = 2.0 * dt / tg_.period();
  const int steps = tg_.steps();
  std::size_t next_sample = 0;

  auto record = [&](int step) {
    while (next_sample < sample_steps.size() && sample_steps[next_sample] == step) {
      if (samples) (*samples)[next_sample] = w;
      ++next_sample;
    }
  };

  std::copy(w0.begin(), w0.end(), w.begin());
  std::copy(v0.begin(), v0.end(), v.begin());
  problem_.zero_dirichlet(w);
  problem_.zero_dirichlet(v);

  double c = scale * tg_.eta(0) * spec_.weight(0.0);
  for (std::size_t k = 0; k < n; ++k) {
    fw[k] = c * w[k];
    fv[k] = c * v[k];
  }
  record(0);

  const double half = 0.5 * dt;
  for (int step = 0; step < steps; ++step) {
    const double t = tg_.time(step);
    rhs(w, v, t, forced, k1w, k1v);
    for (std::size_t k = 0; k < n; ++k) {
      tw[k] = w[k] + half * k1w[k];
      tv[k] = v[k] + half * k1v[k];
    }
    rhs(tw, tv, t + half, forced, k2w, k2v);
    for (std::size_t k = 0; k < n; ++k) {
      tw[k] = w[k] + half * k2w[k];
      tv[k] = v[k] + half * k2v[k];
    }
    rhs(tw, tv, t + half, forced, k3w, k3v);
    for (std::size_t k = 0; k < n; ++k) {
      tw[k] = w[k] + dt * k3w[k];
      tv[k] = v[k] + dt * k3v[k];
    }
    rhs(tw, tv, t + dt, forced, k4w, k4v);

    const double t1 = tg_.time(step + 1);
    c = scale * tg_.eta(step + 1) * spec_.weight(t1);
    const double s = dt / 6.0;
    double checksum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      w[k] += s * (k1w[k] + 2.0 * k2w[k] + 2.0 * k3w[k] + k4w[k]);
      v[k] += s * (k1v[k] + 2.0 * k2v[k] + 2.0 * k3v[k] + k4v[k]);
      fw[k] += c * w[k];
      fv[k] += c * v[k];
      checksum += w[k] + v[k];
    }
    check_finite(checksum, static_cast<std::size_t>(step + 1));
    record(step + 1);
  }
}

FilterResult evolve_and_filter(const WaveState& initial, const ForcingSchedule& schedule,
                               const HelmholtzProblem& problem, const TimeGrid& tg,
                               const FilterSpec& spec, Scheme scheme,
                               std::span<const double> sample_times) {
  const WaveEvolver evolver(problem, schedule, tg, spec, scheme);
  std::vector<int> steps;
  for (double t : sample_times) steps.push_back(tg.nearest_step(t));
  std::vector<std::size_t> order(steps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return steps[a] < steps[b]; });
  std::vector<int> sorted;
  for (auto i : order) sorted.push_back(steps[i]);

  FilterResult result{WaveState(problem.grid()), {}, {}};
  std::vector<std::vector<double>> raw;
  evolver.run(initial.w.values(), initial.v.values(), result.filtered.w.values(),
              result.filtered.v.values(), !schedule.empty(), sorted, &raw);
  result.filtered.t = tg.period();
  result.samples.assign(steps.size(), ScalarField(problem.grid()));
  for (std::size_t r = 0; r < order.size(); ++r)
    result.samples[order[r]] = ScalarField(problem.grid(), std::move(raw[r]));
  for (int s : steps) result.sample_times.push_back(tg.time(s));
  return result;
}

}  // namespace waveholtz
