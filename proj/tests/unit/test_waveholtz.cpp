#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "waveholtz/errors.hpp"
#include "waveholtz/laplacian.hpp"
#include "waveholtz/oracle.hpp"
#include "waveholtz/waveholtz.hpp"

using namespace waveholtz;
using waveholtz::testing::dirichlet_box;
using waveholtz::testing::dirichlet_line;
using waveholtz::testing::random_field;
using waveholtz::testing::relative_difference;
using std::numbers::pi;

namespace {

double rel_norm(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST(MakeConfig, LeapfrogStepSatisfiesCfl) {
  const auto p = dirichlet_line(100, 1.22);
  const auto c = make_config(p);
  const double lambda_n = estimate_max_frequency(p);
  EXPECT_TRUE(cfl_check(1.22, c.tg.dt(), lambda_n, std::nullopt).stable);
  EXPECT_LE(c.tg.dt(), 0.7 * 2.0 / lambda_n);
  EXPECT_GT(c.tg.period() / (c.tg.steps() - 1), 0.7 * 2.0 / lambda_n);
  EXPECT_EQ(c.spec.kind(), FilterKind::Standard);
}

TEST(MakeConfig, Rk4UsesGridSpacing) {
  const auto p = dirichlet_box(20, 3.0);
  ConfigOptions o;
  o.scheme = Scheme::RK4;
  o.periods = 10;
  const auto c = make_config(p, o);
  EXPECT_LE(c.tg.dt(), p.grid().min_spacing());
  EXPECT_EQ(c.tg.periods(), 10);
}

TEST(MakeConfig, AccuracyLimitAndOverrides) {
  const auto p = dirichlet_line(50, 2.0);
  ConfigOptions o;
  o.delta_h = 0.1;
  o.filter_shift = 0.3;
  const auto c = make_config(p, o);
  EXPECT_LE(c.tg.dt() * 2.0, 0.1);
  EXPECT_EQ(c.spec.shift(), 0.3);
  o.steps = 77;
  EXPECT_EQ(make_config(p, o).tg.steps(), 77);
  o.corrected = true;
  o.scheme = Scheme::RK4;
  EXPECT_THROW(make_config(p, o), UnsupportedError);
}

TEST(PiApply, ZeroForcingIsLinear) {
  const auto base = dirichlet_line(30, 1.5);
  const auto p = base.with_forcing(ScalarField(base.grid()));
  const auto c = make_config(p);
  EXPECT_EQ(max_abs(pi_apply(ScalarField(p.grid()), p, c)), 0.0);
  std::mt19937 rng(1);
  const auto a = random_field(p, rng);
  EXPECT_LE(max_abs(pi_apply(2.0 * a, p, c) - 2.0 * pi_apply(a, p, c)), 1e-13 * max_abs(a));
}

TEST(PiApply, FixedPointOfModifiedHelmholtz) {
  const auto p = dirichlet_line(50, 1.22);
  const auto c = make_config(p);
  const auto vinf = oracle::direct_helmholtz_solve(p, modified_frequency(1.22, c.tg.dt()));
  EXPECT_LE(relative_difference(pi_apply(vinf, p, c), vinf), 1e-10);
}

TEST(PiApply, ZeroInputHasModalCoefficients) {
  const auto p = dirichlet_line(50, 1.22);
  const auto c = make_config(p);
  const double dt = c.tg.dt();
  const double wt = modified_frequency(1.22, dt);
  const auto s = oracle::dirichlet_box_spectrum(p);
  const auto pi0 = oracle::sine_transform(pi_apply(ScalarField(p.grid()), p, c));
  const auto fh = oracle::sine_transform(p.forcing());
  for (std::size_t idx = 0; idx < s.lambdas.size(); ++idx) {
    const auto j = static_cast<std::size_t>(s.indices[idx][0] - 1);
    const double vinf = fh[j] / (wt * wt - s.lambdas[idx] * s.lambdas[idx]);
    const double beta = beta_discrete_at_mode(s.lambdas[idx], c.spec, c.tg);
    EXPECT_NEAR(pi0[j], (1.0 - beta) * vinf, 1e-11 * std::max(1.0, std::abs(vinf)));
  }
}

TEST(PiApply, MatchesSpectralOracle) {
  const auto p = dirichlet_line(50, 1.22);
  const auto c = make_config(p);
  std::mt19937 rng(21);
  for (int k = 0; k < 5; ++k) {
    const auto v = random_field(p, rng);
    const auto a = pi_apply(v, p, c);
    const auto b = oracle::pi_apply_spectral(v, p, c);
    EXPECT_LE(relative_difference(a, b), 1e-10);
  }
}

TEST(PiApply, MatchesSpectralOracleIn2DOverSeveralPeriods) {
  const auto p = dirichlet_box(16, 4.3);
  ConfigOptions o;
  o.periods = 3;
  const auto c = make_config(p, o);
  std::mt19937 rng(22);
  const auto v = random_field(p, rng);
  EXPECT_LE(relative_difference(pi_apply(v, p, c), oracle::pi_apply_spectral(v, p, c)), 1e-10);
}

TEST(FixedPointSolve, ConvergesToModifiedHelmholtz) {
  const auto p = dirichlet_line(100, 1.22);
  auto c = make_config(p);
  c.tol = 1e-10;
  const auto sol = fixed_point_solve(p, c);
  ASSERT_TRUE(sol.report.converged);
  const double wt = modified_frequency(1.22, c.tg.dt());
  EXPECT_LE(oracle::helmholtz_residual(p, sol.state.w, wt), 1e-8);
  EXPECT_EQ(sol.report.residual_history.size(), static_cast<std::size_t>(sol.report.iters));
  EXPECT_EQ(sol.report.operator_applications, static_cast<std::size_t>(sol.report.iters));
}

TEST(FixedPointSolve, RateRespectsTheoremBound) {
  const auto p = dirichlet_line(100, 1.22);
  auto c = make_config(p);
  c.tol = 1e-12;
  const auto sol = fixed_point_solve(p, c);
  const double delta = oracle::dirichlet_box_spectrum(p).delta_h(1.22);
  EXPECT_LE(sol.report.measured_rate, fixed_point_rate_bound(delta) + 0.01);
}

TEST(FixedPointSolve, CorrectedDriveSolvesUnmodifiedEquation) {
  const auto p = dirichlet_line(100, 1.22);
  ConfigOptions o;
  o.corrected = true;
  o.tol = 1e-10;
  const auto c = make_config(p, o);
  const auto sol = fixed_point_solve(p, c);
  ASSERT_TRUE(sol.report.converged);
  EXPECT_LE(oracle::helmholtz_residual(p, sol.state.w, 1.22), 1e-8);
}

TEST(FixedPointSolve, ResonantModeDominatesStagnatedResidual) {
  const int n = 100;
  const double omega = 4.1 * pi;
  const auto g = UniformGrid::line(0.0, 1.0, n);
  const auto f = ScalarField::sample(g, [](double x, double) { return std::exp(-200.0 * (x - 0.3) * (x - 0.3)); });
  const auto p = HelmholtzProblem::constant(g, 1.0, f, omega, BoundarySpec::uniform(1, BoundaryCondition::Dirichlet));
  auto c = make_config(p);
  c.max_iters = 51;
  c.tol = 1e-14;
  const WaveHoltzOperator op(p, c);
  std::vector<double> x(op.size(), 0.0), y(op.size());
  for (int k = 0; k < 50; ++k) {
    op.apply(x, y);
    std::swap(x, y);
  }
  op.apply(x, y);
  ScalarField r = op.unpack(y).w - op.unpack(x).w;
  const auto mode = ScalarField::sample(g, [](double x, double) { return std::sin(4.0 * pi * x); });
  const double proj = std::abs(inner_product(r, mode)) / norm2(mode);
  EXPECT_GT(proj / norm2(r), 0.99);
}

TEST(FixedPointSolve, NonConvergenceIsReported) {
  const auto p = dirichlet_line(40, 1.22);
  auto c = make_config(p);
  c.max_iters = 3;
  c.tol = 1e-14;
  const auto sol = fixed_point_solve(p, c);
  EXPECT_FALSE(sol.report.converged);
  EXPECT_EQ(sol.report.iters, 3);
}

TEST(AffineSystem, LinearAndConsistent) {
  const auto p = dirichlet_line(40, 1.22);
  const auto c = make_config(p);
  const auto sys = as_affine_system(p, c);
  std::vector<double> zero(sys.A.dim, 0.0), out(sys.A.dim);
  sys.A.apply(zero, out);
  EXPECT_EQ(rel_norm(out), 0.0);
  EXPECT_LE(linearity_defect(sys.A, 3, 5), 1e-11);

  const auto vinf = oracle::direct_helmholtz_solve(p, modified_frequency(1.22, c.tg.dt()));
  const auto x = sys.pi->pack(WaveState(vinf, ScalarField(p.grid())));
  sys.A.apply(x, out);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = sys.b[k] - out[k];
  EXPECT_LE(rel_norm(out) / rel_norm(sys.b), 1e-10);
}

TEST(AffineSystem, PositiveDefiniteWitness) {
  const auto p = dirichlet_line(40, 1.22);
  const auto c = make_config(p);
  const auto sys = as_affine_system(p, c);
  std::mt19937 rng(17);
  std::normal_distribution<double> normal;
  std::vector<double> v(sys.A.dim), av(sys.A.dim);
  for (int trial = 0; trial < 100; ++trial) {
    for (double& x : v) x = normal(rng);
    sys.A.apply(v, av);
    double dot = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) dot += v[k] * av[k];
    EXPECT_GT(dot, 0.0);
  }
}

TEST(AffineSystem, DenseEigenvaluesAreOneMinusBeta) {
  const auto p = dirichlet_line(40, 1.22);
  const auto c = make_config(p);
  const auto sys = as_affine_system(p, c);
  const auto n = static_cast<Eigen::Index>(sys.A.dim);
  Eigen::MatrixXd a(n, n);
  std::vector<double> e(sys.A.dim, 0.0), col(sys.A.dim);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    sys.A.apply(e, col);
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = col[i];
    e[j] = 0.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  std::vector<double> got;
  for (Eigen::Index k = 0; k < n; ++k) {
    EXPECT_LE(std::abs(es.eigenvalues()(k).imag()), 1e-8);
    got.push_back(es.eigenvalues()(k).real());
  }
  const auto s = oracle::dirichlet_box_spectrum(p);
  std::vector<double> expect;
  for (double l : s.lambdas) expect.push_back(1.0 - beta_discrete_at_mode(l, c.spec, c.tg));
  std::sort(got.begin(), got.end());
  std::sort(expect.begin(), expect.end());
  for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], expect[k], 1e-10);
}

TEST(KrylovAccelerated, GmresAndCgAgree) {
  const auto p = dirichlet_line(100, 1.22);
  const auto c = make_config(p);
  KrylovConfig k;
  k.tol = 1e-10;
  const auto g = krylov_solve(p, c, k);
  k.method = KrylovMethod::CG;
  const auto cg = krylov_solve(p, c, k);
  ASSERT_TRUE(g.report.converged);
  ASSERT_TRUE(cg.report.converged);
  EXPECT_LE(relative_difference(g.state.w, cg.state.w), 10 * 1e-10 * 100);
  const double wt = modified_frequency(1.22, c.tg.dt());
  EXPECT_LE(oracle::helmholtz_residual(p, g.state.w, wt), 1e-8);
  EXPECT_EQ(g.report.operator_applications, static_cast<std::size_t>(g.report.iters) + 1);
}

TEST(KrylovAccelerated, ImpedanceWithRk4) {
  const auto g = UniformGrid::line(0.0, 1.0, 60);
  const auto f = ScalarField::sample(g, [](double x, double) { return std::exp(-100.0 * (x - 0.5) * (x - 0.5)); });
  const auto p = HelmholtzProblem::constant(g, 1.0, f, 6.0,
                                            BoundarySpec::line(BoundaryCondition::Dirichlet, BoundaryCondition::Impedance));
  ConfigOptions o;
  o.scheme = Scheme::RK4;
  const auto c = make_config(p, o);
  KrylovConfig k;
  k.tol = 1e-9;
  const auto sol = krylov_solve(p, c, k);
  ASSERT_TRUE(sol.report.converged);
  // The displacement solves the Helmholtz equation up to O(h^2) and O(dt^4) errors;
  // check the time-periodic consistency Pi(v) = v instead.
  const auto again = pi_apply(sol.state, p, c);
  EXPECT_LE(norm2(again.w - sol.state.w) / norm2(sol.state.w), 1e-7);
}

TEST(SamplingTimes, SingleFrequency) {
  const auto tg = TimeGrid::make(1.0, 1, 50);
  const std::vector<double> f{1.0};
  const auto plan = choose_sampling_times(f, tg);
  ASSERT_EQ(plan.times.size(), 1u);
  EXPECT_EQ(plan.times[0], 0.0);
  const auto beta = extraction_matrix(f, plan.times);
  EXPECT_EQ(beta[0][0], 1.0);
}

TEST(SamplingTimes, TwoFrequenciesWellConditioned) {
  const auto tg = TimeGrid::make(1.0, 1, 64);
  const std::vector<double> f{1.0, 2.0};
  const auto plan = choose_sampling_times(f, tg);
  EXPECT_LE(plan.condition, 3.0);
  const std::vector<double> t{0.0, pi};
  const auto beta = extraction_matrix(f, t);
  EXPECT_NEAR(beta[0][0], 0.5, 1e-15);
  EXPECT_NEAR(beta[0][1], -0.5, 1e-15);
  EXPECT_NEAR(beta[1][0], 0.5, 1e-15);
  EXPECT_NEAR(beta[1][1], 0.5, 1e-15);
}

TEST(SamplingTimes, PowersOfTwoAreFinite) {
  const auto tg = TimeGrid::make(1.0, 1, 400);
  const std::vector<double> f{1.0, 2.0, 4.0, 8.0};
  const auto plan = choose_sampling_times(f, tg);
  EXPECT_TRUE(std::isfinite(plan.condition));
  EXPECT_LT(plan.condition, 1e8);
  EXPECT_EQ(plan.times.size(), 4u);
}

TEST(SamplingTimes, SingularMatrixIsReported) {
  const std::vector<double> f{1.0, 2.0};
  const std::vector<double> t{0.0, 2.0 * pi};
  EXPECT_THROW(extraction_matrix(f, t), SamplingError);
  EXPECT_THROW(choose_sampling_times(f, TimeGrid::make(1.0, 1, 1)), SamplingError);
}

TEST(Extraction, ReconstructsManufacturedSignal) {
  const std::vector<double> f{1.0, 2.0, 4.0, 8.0};
  const std::vector<double> u{0.3, -1.2, 2.5, 0.7};
  const auto tg = TimeGrid::make(1.0, 1, 400);
  const auto plan = choose_sampling_times(f, tg);
  const auto beta = extraction_matrix(f, plan.times);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double got = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      double w = 0.0;
      for (std::size_t q = 0; q < f.size(); ++q) w += u[q] * std::cos(f[q] * plan.times[j]);
      got += beta[i][j] * w;
    }
    EXPECT_NEAR(got, u[i], 1e-12);
  }
}

TEST(MultifreqSolve, MatchesSeparateDirectSolves) {
  const auto g = UniformGrid::line(0.0, 1.0, 60);
  ScalarField delta(g);
  delta[30] = -1.0 / g.spacing(0);
  const auto p = HelmholtzProblem::constant(g, 1.0, delta, 1.0, BoundarySpec::uniform(1, BoundaryCondition::Dirichlet));
  const std::vector<double> freqs{1.0, 2.0, 4.0};
  const auto schedule = ForcingSchedule::multi({delta, delta, delta}, freqs);
  ConfigOptions o;
  o.frequencies = {2.0, 4.0};
  const auto c = make_config(p, o);
  KrylovConfig k;
  k.tol = 1e-12;
  const auto sol = multifreq_solve(p, schedule, c, SolverMethod::GMRES, k);
  ASSERT_TRUE(sol.report.converged);
  ASSERT_EQ(sol.solutions.size(), 3u);
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const auto ref = oracle::direct_helmholtz_solve(p, modified_frequency(freqs[i], c.tg.dt()));
    EXPECT_LE(relative_difference(sol.solutions[i], ref), 1e-8) << i;
  }
}

TEST(MultifreqSolve, SingleFrequencyDegeneratesToPlainSolve) {
  const auto p = dirichlet_line(40, 1.22);
  auto c = make_config(p);
  c.tol = 1e-11;
  const auto schedule = ForcingSchedule::single(p);
  const auto multi = multifreq_solve(p, schedule, c, SolverMethod::FixedPoint);
  const auto plain = fixed_point_solve(p, c);
  EXPECT_LE(relative_difference(multi.solutions[0], plain.state.w), 1e-9);
}

TEST(MultifreqSolve, RejectsUnrelatedFrequencies) {
  const auto p = dirichlet_line(40, 1.0);
  const auto schedule = ForcingSchedule::multi({p.forcing(), p.forcing()}, {1.0, 2.5});
  ConfigOptions o;
  o.frequencies = {2.5};
  EXPECT_THROW(multifreq_solve(p, schedule, make_config(p, o), SolverMethod::FixedPoint), DomainError);
}

TEST(MeasuredRate, GeometricMeanOfLastQuartile) {
  std::vector<double> h{1.0};
  for (int k = 0; k < 20; ++k) h.push_back(h.back() * (k < 10 ? 0.9 : 0.5));
  EXPECT_NEAR(measured_rate(h), 0.5, 1e-12);
  EXPECT_EQ(measured_rate({1.0}), 1.0);
}
