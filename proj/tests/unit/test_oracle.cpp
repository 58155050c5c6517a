#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "waveholtz/errors.hpp"
#include "waveholtz/laplacian.hpp"
#include "waveholtz/oracle.hpp"

using namespace waveholtz;
using waveholtz::testing::dirichlet_box;
using waveholtz::testing::dirichlet_line;
using waveholtz::testing::random_field;
using waveholtz::testing::relative_difference;
using std::numbers::pi;

TEST(DirichletBoxSpectrum, SingleInteriorNode) {
  const auto s = oracle::dirichlet_box_spectrum(dirichlet_line(2, 1.0));
  ASSERT_EQ(s.lambdas.size(), 1u);
  EXPECT_NEAR(s.lambdas[0] * s.lambdas[0], 8.0, 1e-13);
}

TEST(DirichletBoxSpectrum, MatchesDenseEigenvalues) {
  for (const auto& p : {dirichlet_line(20, 1.0), dirichlet_box(8, 1.0)}) {
    const auto s = oracle::dirichlet_box_spectrum(p);
    const Eigen::MatrixXd a = Eigen::MatrixXd(oracle::assemble_laplacian(p));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    ASSERT_EQ(static_cast<std::size_t>(es.eigenvalues().size()), s.lambdas.size());
    for (std::size_t j = 0; j < s.lambdas.size(); ++j)
      EXPECT_NEAR(es.eigenvalues()(j), s.lambdas[j] * s.lambdas[j], 1e-10 * es.eigenvalues()(j) + 1e-10);
  }
}

TEST(DirichletBoxSpectrum, ModesAreEigenvectors) {
  const auto p = dirichlet_box(10, 1.0);
  const auto s = oracle::dirichlet_box_spectrum(p);
  for (std::size_t i : {0ul, 7ul, 40ul, s.lambdas.size() - 1}) {
    const auto phi = s.mode(i);
    const auto lphi = apply_discrete_laplacian(p, phi);
    const double l2 = s.lambdas[i] * s.lambdas[i];
    EXPECT_LE(max_abs(lphi - l2 * phi), 1e-11 * l2);
  }
}

TEST(DirichletBoxSpectrum, GapAndShiftedFrequencies) {
  const auto p = dirichlet_line(100, 1.22);
  const auto s = oracle::dirichlet_box_spectrum(p);
  const double d = s.delta_h(1.22);
  EXPECT_GT(d, 0.0);
  EXPECT_NEAR(d, std::abs(s.lambdas[0] - 1.22) / 1.22, 1e-15);
  const double dt = 0.7 * 2.0 / estimate_max_frequency(p);
  const auto shifted = s.shifted(dt);
  for (std::size_t j = 0; j < shifted.size(); ++j) {
    EXPECT_LE(shifted[j], pi / 2.0 * s.lambdas[j] * (1 + 1e-15));
    EXPECT_LE(shifted[j] - s.lambdas[j], dt * dt * std::pow(shifted[j], 3) / 24.0 * (1 + 1e-12));
  }
}

TEST(DirichletBoxSpectrum, RejectsUnsupportedProblems) {
  const auto g = UniformGrid::line(0.0, 1.0, 10);
  EXPECT_THROW(oracle::dirichlet_box_spectrum(HelmholtzProblem::constant(
                   g, 1.0, ScalarField(g), 1.0, BoundarySpec::line(BoundaryCondition::Dirichlet, BoundaryCondition::Neumann))),
               UnsupportedError);
  ScalarField csq(g, 1.0);
  csq[3] = 2.0;
  EXPECT_THROW(oracle::dirichlet_box_spectrum(HelmholtzProblem(
                   g, csq, ScalarField(g), 1.0, BoundarySpec::uniform(1, BoundaryCondition::Dirichlet))),
               UnsupportedError);
}

TEST(SineTransform, RoundTrip) {
  std::mt19937 rng(8);
  for (const auto& p : {dirichlet_line(33, 1.0), dirichlet_box(9, 1.0)}) {
    const auto v = random_field(p, rng);
    const auto back = oracle::inverse_sine_transform(p.grid(), oracle::sine_transform(v));
    EXPECT_LE(max_abs(back - v), 1e-13);
  }
}

TEST(DirectHelmholtzSolve, ManufacturedEigenmode) {
  const auto base = dirichlet_box(12, 3.0);
  const auto s = oracle::dirichlet_box_spectrum(base);
  const auto phi = s.mode(5);
  const double sigma = 3.0;
  const double l2 = s.lambdas[5] * s.lambdas[5];
  const auto p = base.with_forcing((sigma * sigma - l2) * phi);
  const auto v = oracle::direct_helmholtz_solve(p, sigma);
  EXPECT_LE(max_abs(v - phi), 1e-11);
  EXPECT_LE(oracle::helmholtz_residual(p, v, sigma), 1e-12);
}

TEST(DirectHelmholtzSolve, ModalFormula) {
  const auto p = dirichlet_line(64, 5.3);
  const double sigma = 5.1;
  const auto v = oracle::direct_helmholtz_solve(p, sigma);
  const auto vh = oracle::sine_transform(v);
  const auto fh = oracle::sine_transform(p.forcing());
  const double h = 1.0 / 64;
  for (std::size_t j = 0; j < vh.size(); ++j) {
    const double s = std::sin((j + 1) * pi * h / 2.0);
    const double l2 = 4.0 / (h * h) * s * s;
    EXPECT_NEAR(vh[j], fh[j] / (sigma * sigma - l2), 1e-11 * std::max(1.0, std::abs(vh[j])));
  }
}

TEST(DirectHelmholtzSolve, NeumannAndVariableSpeed) {
  const auto g = UniformGrid::line(0.0, 1.0, 50);
  const auto csq = ScalarField::sample(g, [](double x, double) { return 1.0 + 0.5 * x; });
  const auto f = ScalarField::sample(g, [](double x, double) { return std::cos(3.0 * x); });
  const HelmholtzProblem p(g, csq, f, 2.5, BoundarySpec::line(BoundaryCondition::Neumann, BoundaryCondition::Dirichlet));
  const auto v = oracle::direct_helmholtz_solve(p, 2.5);
  EXPECT_LE(oracle::helmholtz_residual(p, v, 2.5), 1e-12);
}

TEST(DirectHelmholtzSolve, ExactResonanceIsReported) {
  const auto p = dirichlet_line(20, 1.0);
  const auto s = oracle::dirichlet_box_spectrum(p);
  EXPECT_THROW(oracle::direct_helmholtz_solve(p, s.lambdas[2]), ResonanceError);
}

TEST(DirectHelmholtzSolve, PointForcingConvergesToGreensFunction) {
  // u'' + w^2 u = -delta(x - 1/2), u(0) = u(1) = 0.
  const double omega = 3.7;
  const double a = 1.0 / (2.0 * omega * std::cos(omega / 2.0));
  auto exact = [&](double x) { return x < 0.5 ? a * std::sin(omega * x) : a * std::sin(omega * (1.0 - x)); };
  std::vector<double> errors;
  for (int n : {40, 80, 160, 320}) {
    const auto g = UniformGrid::line(0.0, 1.0, n);
    ScalarField f(g);
    f[n / 2] = -1.0 / g.spacing(0);
    const auto p = HelmholtzProblem::constant(g, 1.0, f, omega, BoundarySpec::uniform(1, BoundaryCondition::Dirichlet));
    const auto v = oracle::direct_helmholtz_solve(p, omega);
    double err = 0.0;
    for (int i = 0; i <= n; ++i) err = std::max(err, std::abs(v[i] - exact(g.coord(0, i))));
    errors.push_back(err);
  }
  for (std::size_t i = 1; i < errors.size(); ++i) EXPECT_GT(errors[i - 1] / errors[i], 3.5);
}

TEST(PiApplySpectral, FixedPointIsInvariant) {
  const auto p = dirichlet_line(50, 1.22);
  const auto config = make_config(p);
  const double wt = modified_frequency(1.22, config.tg.dt());
  const auto vinf = oracle::direct_helmholtz_solve(p, wt);
  EXPECT_LE(relative_difference(oracle::pi_apply_spectral(vinf, p, config), vinf), 1e-12);
}

TEST(PiApplySpectral, RepeatedApplicationDecaysGeometrically) {
  const auto p = dirichlet_line(50, 1.22);
  const auto config = make_config(p);
  const double dt = config.tg.dt();
  const auto vinf = oracle::direct_helmholtz_solve(p, modified_frequency(1.22, dt));
  const auto s = oracle::dirichlet_box_spectrum(p);
  ScalarField v(p.grid());
  for (int k = 0; k < 6; ++k) v = oracle::pi_apply_spectral(v, p, config);
  const auto err = oracle::sine_transform(v - vinf);
  const auto vh = oracle::sine_transform(vinf);
  for (std::size_t idx = 0; idx < 5; ++idx) {
    const auto j = static_cast<std::size_t>(s.indices[idx][0] - 1);
    const double beta = beta_discrete_at_mode(s.lambdas[idx], config.spec, config.tg);
    EXPECT_NEAR(err[j], -std::pow(beta, 6) * vh[j], 1e-12 * std::max(1.0, std::abs(vh[j])));
  }
}

TEST(TrapezoidReference, ZeroAndBound) {
  const auto r0 = oracle::trapezoid_reference(0.0, 7);
  EXPECT_EQ(r0.direct, 1.0);
  EXPECT_EQ(r0.closed_form, 1.0);
  const auto r = oracle::trapezoid_reference(2.0 * pi, 10);
  EXPECT_LE(std::abs(r.direct), 0.01 * 2.0 * pi / 12.0);
  EXPECT_NEAR(r.direct, r.closed_form, 1e-13);
  EXPECT_THROW(oracle::trapezoid_reference(40.0, 10), DomainError);
}

TEST(TrapezoidReference, FactorBounds) {
  for (int i = -300; i <= 300; ++i) {
    const double x = i / 100.0;
    const double g = oracle::trapezoid_factor(x);
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 1.0 - x * x / 12.0 + 1e-15);
  }
}
