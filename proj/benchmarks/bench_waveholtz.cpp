#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "waveholtz/laplacian.hpp"
#include "waveholtz/tunable.hpp"
#include "waveholtz/waveholtz.hpp"

using namespace waveholtz;

namespace {

HelmholtzProblem box(int n, double omega, BoundaryCondition bc) {
  const auto g = UniformGrid::box({-1.0, -1.0}, {1.0, 1.0}, {n, n});
  const auto f = ScalarField::sample(g, [](double x, double y) { return std::exp(-36.0 * (x * x + y * y)); });
  return HelmholtzProblem::constant(g, 1.0, f, omega, BoundarySpec::uniform(2, bc));
}

HelmholtzProblem line(int n, double omega) {
  const auto g = UniformGrid::line(0.0, 1.0, n);
  const auto f = ScalarField::sample(g, [](double x, double) { return std::exp(-50.0 * (x - 0.3) * (x - 0.3)); });
  return HelmholtzProblem::constant(g, 1.0, f, omega, BoundarySpec::uniform(1, BoundaryCondition::Dirichlet));
}

void BM_Laplacian2D(benchmark::State& state) {
  const auto p = box(static_cast<int>(state.range(0)), 10.0, BoundaryCondition::Dirichlet);
  const DiscreteLaplacian lap(p);
  std::vector<double> w(lap.size()), out(lap.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::sin(0.01 * k);
  for (auto _ : state) {
    lap.apply(w, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(w.size()));
}
BENCHMARK(BM_Laplacian2D)->Arg(64)->Arg(128)->Arg(256);

void BM_PiApplyLeapfrog2D(benchmark::State& state) {
  const double omega = static_cast<double>(state.range(0));
  const auto p = box(8 * static_cast<int>(std::ceil(omega)), omega, BoundaryCondition::Dirichlet);
  const auto c = make_config(p);
  const WaveHoltzOperator pi(p, c);
  std::vector<double> x(pi.size(), 0.1), y(pi.size());
  for (auto _ : state) {
    pi.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["steps"] = c.tg.steps();
}
BENCHMARK(BM_PiApplyLeapfrog2D)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_PiApplyRK4Impedance2D(benchmark::State& state) {
  const double omega = static_cast<double>(state.range(0));
  const auto p = box(8 * static_cast<int>(std::ceil(omega)), omega, BoundaryCondition::Impedance);
  ConfigOptions o;
  o.scheme = Scheme::RK4;
  const auto c = make_config(p, o);
  const WaveHoltzOperator pi(p, c);
  std::vector<double> x(pi.size(), 0.1), y(pi.size());
  for (auto _ : state) {
    pi.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["steps"] = c.tg.steps();
}
BENCHMARK(BM_PiApplyRK4Impedance2D)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_GmresSolve1D(benchmark::State& state) {
  const double omega = static_cast<double>(state.range(0));
  const auto p = line(10 * static_cast<int>(std::ceil(omega)), omega);
  const auto c = make_config(p);
  KrylovConfig k;
  k.tol = 1e-10;
  k.restart = 500;
  k.max_iters = 500;
  for (auto _ : state) {
    const auto sol = krylov_solve(p, c, k);
    benchmark::DoNotOptimize(sol.state.w.values().data());
    state.counters["iters"] = sol.report.iters;
  }
}
BENCHMARK(BM_GmresSolve1D)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_TunableDesign(benchmark::State& state) {
  const double omega = 4.1 * 3.14159265358979323846;
  const auto tg = TimeGrid::make(omega, 1, 70);
  for (auto _ : state) {
    const auto d = optimize_tunable_filter(omega, 4.0 * 3.14159265358979323846, 12, tg);
    benchmark::DoNotOptimize(d.cost);
  }
}
BENCHMARK(BM_TunableDesign)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
