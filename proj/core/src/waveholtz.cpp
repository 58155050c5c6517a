#include "waveholtz/waveholtz.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "waveholtz/errors.hpp"
#include "waveholtz/laplacian.hpp"

namespace waveholtz {

namespace {

using std::numbers::pi;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void validate(const WaveHoltzConfig& config) {
  if (!(config.tol > 0.0)) throw DomainError("tolerance must be positive");
  if (config.max_iters < 1) throw DomainError("max_iters must be at least 1");
}

struct FixedPointRun {
  std::vector<double> x;
  IterationReport report;
};

FixedPointRun iterate(const WaveHoltzOperator& op, double tol, int max_iters) {
  const auto start = std::chrono::steady_clock::now();
  FixedPointRun run;
  run.x.assign(op.size(), 0.0);
  std::vector<double> y(op.size());
  double first = 0.0;
  auto& rep = run.report;
  while (rep.iters < max_iters) {
    op.apply(run.x, y);
    ++rep.iters;
    ++rep.operator_applications;
    double diff = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) diff += (y[k] - run.x[k]) * (y[k] - run.x[k]);
    diff = std::sqrt(diff);
    std::swap(run.x, y);
    if (rep.iters == 1) {
      first = diff;
      rep.residual_history.push_back(diff == 0.0 ? 0.0 : 1.0);
      if (diff == 0.0) {
        rep.converged = true;
        break;
      }
      continue;
    }
    const double rel = diff / first;
    if (rel > rep.residual_history.back()) rep.non_monotone = true;
    rep.residual_history.push_back(rel);
    if (rel <= tol) {
      rep.converged = true;
      break;
    }
  }
  rep.measured_rate = measured_rate(rep.residual_history);
  rep.wall_time = seconds_since(start);
  return run;
}

Eigen::MatrixXd sampling_matrix(std::span<const double> frequencies, std::span<const double> times) {
  const auto n = static_cast<Eigen::Index>(frequencies.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = std::cos(frequencies[j] * times[i]);
  return a;
}

double condition_number(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

void check_integer_multiples(const std::vector<double>& freqs) {
  for (double f : freqs) {
    const double ratio = f / freqs.front();
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
      throw DomainError("frequencies must be integer multiples of the lowest one");
  }
}

}  // namespace

WaveHoltzConfig make_config(const HelmholtzProblem& problem, const ConfigOptions& options) {
  const double omega = problem.omega();
  const int periods = options.periods;
  if (periods < 1) throw DomainError("periods must be at least 1");
  if (options.corrected && options.scheme != Scheme::Leapfrog)
    throw UnsupportedError("the corrected drive is only defined for the leapfrog scheme");
  if (options.corrected && !options.frequencies.empty())
    throw UnsupportedError("the corrected drive supports a single frequency");

  int steps = 0;
  if (options.steps) {
    steps = *options.steps;
    if (steps < 1) throw DomainError("steps must be positive");
  } else {
    double dt_max = 0.0;
    if (options.scheme == Scheme::Leapfrog) {
      const double lambda_n = estimate_max_frequency(problem);
      const double stability = 2.0 / (lambda_n + 2.0 * omega / pi);
      dt_max = std::min(options.leapfrog_safety * 2.0 / lambda_n, 0.999 * stability);
    } else {
      dt_max = options.rk4_safety * problem.grid().min_spacing() / std::sqrt(problem.max_csq());
    }
    if (options.delta_h) dt_max = std::min(dt_max, std::min(*options.delta_h, 1.0) / omega);
    const double period = periods * 2.0 * pi / omega;
    steps = static_cast<int>(std::ceil(period / dt_max * (1.0 - 1e-14)));
  }

  TimeGrid tg = options.corrected ? TimeGrid::corrected(omega, periods, steps)
                                  : TimeGrid::make(omega, periods, steps);
  std::vector<double> freqs{tg.omega()};
  freqs.insert(freqs.end(), options.frequencies.begin(), options.frequencies.end());
  FilterSpec spec = FilterSpec::multi_frequency(freqs, periods);
  if (options.filter_shift) spec.with_shift(*options.filter_shift);
  return WaveHoltzConfig{tg, spec, options.scheme, options.max_iters, options.tol, options.corrected};
}

WaveHoltzOperator::WaveHoltzOperator(const HelmholtzProblem& problem, const WaveHoltzConfig& config,
                                     ForcingSchedule schedule)
    : evolver_(problem, std::move(schedule), config.tg, config.spec, config.scheme),
      first_order_(config.scheme == Scheme::RK4),
      nodes_(problem.active_nodes().size()),
      size_(nodes_ * (first_order_ ? 2 : 1)),
      w_(problem.grid().node_count()),
      v_(problem.grid().node_count()),
      fw_(problem.grid().node_count()),
      fv_(problem.grid().node_count()) {}

WaveHoltzOperator::WaveHoltzOperator(const HelmholtzProblem& problem, const WaveHoltzConfig& config)
    : WaveHoltzOperator(problem, config, ForcingSchedule::single(problem, config.corrected)) {}

void WaveHoltzOperator::apply(std::span<const double> x, std::span<double> y, bool forced) const {
  if (x.size() != size_ || y.size() != size_) throw StructuralError("operator size mismatch");
  const auto& active = problem().active_nodes();
  std::fill(w_.begin(), w_.end(), 0.0);
  std::fill(v_.begin(), v_.end(), 0.0);
  for (std::size_t k = 0; k < nodes_; ++k) w_[active[k]] = x[k];
  if (first_order_)
    for (std::size_t k = 0; k < nodes_; ++k) v_[active[k]] = x[nodes_ + k];
  evolver_.run(w_, v_, fw_, fv_, forced);
  for (std::size_t k = 0; k < nodes_; ++k) y[k] = fw_[active[k]];
  if (first_order_)
    for (std::size_t k = 0; k < nodes_; ++k) y[nodes_ + k] = fv_[active[k]];
}

std::vector<double> WaveHoltzOperator::pack(const WaveState& state) const {
  const auto& active = problem().active_nodes();
  std::vector<double> x(size_);
  for (std::size_t k = 0; k < nodes_; ++k) x[k] = state.w[active[k]];
  if (first_order_)
    for (std::size_t k = 0; k < nodes_; ++k) x[nodes_ + k] = state.v[active[k]];
  return x;
}

WaveState WaveHoltzOperator::unpack(std::span<const double> x) const {
  if (x.size() != size_) throw StructuralError("operator size mismatch");
  const auto& active = problem().active_nodes();
  WaveState state(problem().grid());
  for (std::size_t k = 0; k < nodes_; ++k) state.w[active[k]] = x[k];
  if (first_order_)
    for (std::size_t k = 0; k < nodes_; ++k) state.v[active[k]] = x[nodes_ + k];
  return state;
}

std::vector<ScalarField> WaveHoltzOperator::sample(std::span<const double> x,
                                                   std::span<const int> steps) const {
  const WaveState state = unpack(x);
  std::vector<std::vector<double>> raw;
  evolver_.run(state.w.values(), state.v.values(), fw_, fv_, true, steps, &raw);
  std::vector<ScalarField> out;
  for (auto& r : raw) out.emplace_back(problem().grid(), std::move(r));
  return out;
}

WaveState pi_apply(const WaveState& v, const HelmholtzProblem& problem, const WaveHoltzConfig& config) {
  const WaveHoltzOperator op(problem, config);
  const auto x = op.pack(v);
  std::vector<double> y(op.size());
  op.apply(x, y);
  WaveState out = op.unpack(y);
  out.t = 0.0;
  return out;
}

ScalarField pi_apply(const ScalarField& v, const HelmholtzProblem& problem,
                     const WaveHoltzConfig& config) {
  return pi_apply(WaveState(v, ScalarField(v.grid())), problem, config).w;
}

WaveHoltzSolution fixed_point_solve(const HelmholtzProblem& problem, const WaveHoltzConfig& config) {
  validate(config);
  const WaveHoltzOperator op(problem, config);
  auto run = iterate(op, config.tol, config.max_iters);
  return WaveHoltzSolution{op.unpack(run.x), std::move(run.report)};
}

AffineSystem as_affine_system(const HelmholtzProblem& problem, const WaveHoltzConfig& config,
                              ForcingSchedule schedule) {
  auto op = std::make_shared<const WaveHoltzOperator>(problem, config, std::move(schedule));
  AffineSystem sys;
  sys.pi = op;
  sys.b.assign(op->size(), 0.0);
  const std::vector<double> zero(op->size(), 0.0);
  op->apply(zero, sys.b, true);
  sys.A.dim = op->size();
  sys.A.symmetric_hint = config.scheme == Scheme::Leapfrog;
  sys.A.apply = [op](std::span<const double> x, std::span<double> y) {
    op->apply(x, y, false);
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = x[k] - y[k];
  };
  return sys;
}

AffineSystem as_affine_system(const HelmholtzProblem& problem, const WaveHoltzConfig& config) {
  return as_affine_system(problem, config, ForcingSchedule::single(problem, config.corrected));
}

namespace {

FixedPointRun accelerated(const AffineSystem& sys, const KrylovConfig& krylov) {
  const auto start = std::chrono::steady_clock::now();
  auto res = waveholtz::krylov_solve(sys.A, sys.b, krylov);
  res.report.operator_applications += 1;
  res.report.wall_time = seconds_since(start);
  return FixedPointRun{std::move(res.x), std::move(res.report)};
}

}  // namespace

WaveHoltzSolution krylov_solve(const HelmholtzProblem& problem, const WaveHoltzConfig& config,
                               const KrylovConfig& krylov) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const AffineSystem sys = as_affine_system(problem, config);
  auto run = accelerated(sys, krylov);
  run.report.wall_time = seconds_since(start);
  return WaveHoltzSolution{sys.pi->unpack(run.x), std::move(run.report)};
}

SamplingPlan choose_sampling_times(std::span<const double> frequencies, const TimeGrid& tg) {
  const std::size_t n = frequencies.size();
  if (n == 0) throw DomainError("no frequencies to sample");
  SamplingPlan plan;
  if (n == 1) {
    plan.steps = {0};
    plan.times = {0.0};
    plan.condition = 1.0;
    return plan;
  }
  const int max_spacing = tg.steps() / static_cast<int>(n - 1);
  double best = std::numeric_limits<double>::infinity();
  int best_spacing = 0;
  std::vector<double> times(n);
  for (int s = 1; s <= max_spacing; ++s) {
    for (std::size_t i = 0; i < n; ++i) times[i] = tg.time(static_cast<int>(i) * s);
    const double c = condition_number(sampling_matrix(frequencies, times));
    if (c < best) {
      best = c;
      best_spacing = s;
    }
  }
  if (!(best <= 1e8))
    throw SamplingError("no sample spacing on this time grid gives a condition number below 1e8; "
                        "try a finer time step or different frequencies");
  for (std::size_t i = 0; i < n; ++i) {
    plan.steps.push_back(static_cast<int>(i) * best_spacing);
    plan.times.push_back(tg.time(plan.steps.back()));
  }
  plan.condition = best;
  return plan;
}

std::vector<std::vector<double>> extraction_matrix(std::span<const double> frequencies,
                                                   std::span<const double> times) {
  if (frequencies.size() != times.size())
    throw StructuralError("need one sample time per frequency");
  const Eigen::MatrixXd a = sampling_matrix(frequencies, times);
  if (condition_number(a) > 1e8) throw SamplingError("sampling matrix is singular; choose other times");
  const Eigen::MatrixXd inv = a.fullPivLu().inverse();
  std::vector<std::vector<double>> rows(frequencies.size(), std::vector<double>(frequencies.size()));
  for (Eigen::Index i = 0; i < inv.rows(); ++i)
    for (Eigen::Index j = 0; j < inv.cols(); ++j) rows[i][j] = inv(i, j);
  return rows;
}

MultiFrequencySolution multifreq_solve(const HelmholtzProblem& problem,
                                       const ForcingSchedule& schedule,
                                       const WaveHoltzConfig& config, SolverMethod method,
                                       const KrylovConfig& krylov) {
  validate(config);
  if (schedule.empty()) throw DomainError("multi-frequency solve needs at least one forcing");
  if (schedule.corrected || config.corrected)
    throw UnsupportedError("the corrected drive supports a single frequency");
  check_integer_multiples(schedule.frequencies);
  if (std::abs(schedule.frequencies.front() - config.tg.omega()) > 1e-12 * config.tg.omega())
    throw DomainError("the time grid must be built on the lowest frequency");

  const auto start = std::chrono::steady_clock::now();
  MultiFrequencySolution out;
  std::shared_ptr<const WaveHoltzOperator> op;
  FixedPointRun run;
  if (method == SolverMethod::FixedPoint) {
    op = std::make_shared<const WaveHoltzOperator>(problem, config, schedule);
    run = iterate(*op, config.tol, config.max_iters);
  } else {
    const AffineSystem sys = as_affine_system(problem, config, schedule);
    KrylovConfig k = krylov;
    k.method = method == SolverMethod::CG ? KrylovMethod::CG : KrylovMethod::GMRES;
    run = accelerated(sys, k);
    op = sys.pi;
  }

  out.sampling = choose_sampling_times(schedule.frequencies, config.tg);
  const auto samples = op->sample(run.x, out.sampling.steps);
  const auto beta = extraction_matrix(schedule.frequencies, out.sampling.times);
  for (std::size_t i = 0; i < beta.size(); ++i) {
    ScalarField u(problem.grid());
    for (std::size_t j = 0; j < samples.size(); ++j) u.axpy(beta[i][j], samples[j]);
    out.solutions.push_back(std::move(u));
  }
  out.report = std::move(run.report);
  out.report.operator_applications += 1;  // the extra sampled period
  out.report.wall_time = seconds_since(start);
  return out;
}

}  // namespace waveholtz
