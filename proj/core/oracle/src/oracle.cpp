#include "waveholtz/oracle.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "waveholtz/errors.hpp"
#include "waveholtz/filter.hpp"
#include "waveholtz/laplacian.hpp"

namespace waveholtz::oracle {

namespace {

using std::numbers::pi;

constexpr std::size_t kMaxDirectUnknowns = 400000;

void require_dirichlet_box(const HelmholtzProblem& problem) {
  if (!problem.constant_speed())
    throw UnsupportedError("closed-form spectrum needs a constant wave speed");
  for (int s = 0; s < 2 * problem.grid().dim(); ++s)
    if (problem.bcs().at(static_cast<Side>(s)) != BoundaryCondition::Dirichlet)
      throw UnsupportedError("closed-form spectrum needs Dirichlet conditions on every side");
}

// Sine transform of `count` contiguous rows of length n.
void sine_pass(std::vector<double>& data, int n, std::size_t count, bool forward) {
  std::vector<double> table(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) table[j * n + i] = std::sin(pi * (j + 1) * (i + 1) / (n + 1));
  const double scale = forward ? 2.0 / (n + 1) : 1.0;
  std::vector<double> out(n);
  for (std::size_t b = 0; b < count; ++b) {
    double* row = data.data() + b * n;
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += table[j * n + i] * row[i];
      out[j] = scale * s;
    }
    std::copy(out.begin(), out.end(), row);
  }
}

std::vector<double> interior(const ScalarField& v) {
  const auto& g = v.grid();
  std::vector<double> out;
  if (g.dim() == 1) {
    for (int i = 1; i < g.cells(0); ++i) out.push_back(v[g.index(i)]);
  } else {
    for (int i = 1; i < g.cells(0); ++i)
      for (int j = 1; j < g.cells(1); ++j) out.push_back(v[g.index(i, j)]);
  }
  return out;
}

ScalarField from_interior(const UniformGrid& g, const std::vector<double>& data) {
  ScalarField v(g);
  std::size_t k = 0;
  if (g.dim() == 1) {
    for (int i = 1; i < g.cells(0); ++i) v[g.index(i)] = data[k++];
  } else {
    for (int i = 1; i < g.cells(0); ++i)
      for (int j = 1; j < g.cells(1); ++j) v[g.index(i, j)] = data[k++];
  }
  return v;
}

void transform(const UniformGrid& g, std::vector<double>& data, bool forward) {
  if (g.dim() == 1) {
    sine_pass(data, g.cells(0) - 1, 1, forward);
  } else {
    const int nx = g.cells(0) - 1;
    const int ny = g.cells(1) - 1;
    sine_pass(data, ny, static_cast<std::size_t>(nx), forward);
    std::vector<double> t(data.size());
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) t[static_cast<std::size_t>(j) * nx + i] = data[static_cast<std::size_t>(i) * ny + j];
    sine_pass(t, nx, static_cast<std::size_t>(ny), forward);
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) data[static_cast<std::size_t>(i) * ny + j] = t[static_cast<std::size_t>(j) * nx + i];
  }
}

// Eigenvalues in transform (row-major j, k) order.
std::vector<double> lambda_squared(const HelmholtzProblem& problem) {
  const auto& g = problem.grid();
  const double csq = problem.max_csq();
  auto axis = [&](int d) {
    std::vector<double> out;
    const int n = g.cells(d);
    const double h = g.spacing(d);
    for (int j = 1; j < n; ++j) {
      const double s = std::sin(j * pi / (2.0 * n));
      out.push_back(csq * 4.0 / (h * h) * s * s);
    }
    return out;
  };
  const auto lx = axis(0);
  if (g.dim() == 1) return lx;
  const auto ly = axis(1);
  std::vector<double> out;
  for (double a : lx)
    for (double b : ly) out.push_back(a + b);
  return out;
}

}  // namespace

double SpectralDecomposition::delta_h(double omega) const {
  double best = std::numeric_limits<double>::infinity();
  for (double l : lambdas) best = std::min(best, std::abs(l - omega) / omega);
  return best;
}

std::vector<double> SpectralDecomposition::shifted(double dt) const {
  std::vector<double> out;
  for (double l : lambdas) out.push_back(shifted_eigenfrequency(l, dt));
  return out;
}

ScalarField SpectralDecomposition::mode(std::size_t i) const {
  const auto [j, k] = indices.at(i);
  return ScalarField::sample(grid, [&](double x, double y) {
    double v = std::sin(j * pi * (x - grid.lo(0)) / (grid.hi(0) - grid.lo(0)));
    if (grid.dim() == 2) v *= std::sin(k * pi * (y - grid.lo(1)) / (grid.hi(1) - grid.lo(1)));
    return v;
  });
}

SpectralDecomposition dirichlet_box_spectrum(const HelmholtzProblem& problem) {
  require_dirichlet_box(problem);
  const auto& g = problem.grid();
  const auto l2 = lambda_squared(problem);
  std::vector<std::array<int, 2>> idx;
  if (g.dim() == 1) {
    for (int j = 1; j < g.cells(0); ++j) idx.push_back({j, 0});
  } else {
    for (int j = 1; j < g.cells(0); ++j)
      for (int k = 1; k < g.cells(1); ++k) idx.push_back({j, k});
  }
  std::vector<std::size_t> order(l2.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return l2[a] < l2[b]; });
  SpectralDecomposition s{g, {}, {}};
  for (auto o : order) {
    s.lambdas.push_back(std::sqrt(l2[o]));
    s.indices.push_back(idx[o]);
  }
  return s;
}

std::vector<double> sine_transform(const ScalarField& v) {
  auto data = interior(v);
  transform(v.grid(), data, true);
  return data;
}

ScalarField inverse_sine_transform(const UniformGrid& grid, const std::vector<double>& coefficients) {
  auto data = coefficients;
  transform(grid, data, false);
  return from_interior(grid, data);
}

Eigen::SparseMatrix<double> assemble_laplacian(const HelmholtzProblem& problem) {
  if (problem.bcs().has(BoundaryCondition::Impedance))
    throw UnsupportedError("impedance conditions have no time-independent operator to assemble");
  const auto& g = problem.grid();
  const auto& active = problem.active_nodes();
  const std::size_t nodes = g.node_count();
  if (active.size() > kMaxDirectUnknowns)
    throw DomainError("too many unknowns for a direct solve (limit 400000)");
  std::vector<long> column(nodes, -1);
  for (std::size_t k = 0; k < active.size(); ++k) column[active[k]] = static_cast<long>(k);

  // Probe with every third node per axis: each output node sees at most one probe.
  const DiscreteLaplacian lap(problem);
  std::vector<double> probe(nodes), out(nodes);
  std::vector<Eigen::Triplet<double>> triplets;
  const int ny = g.dim() == 2 ? g.nodes(1) : 1;
  const int colors_y = g.dim() == 2 ? 3 : 1;
  for (int cx = 0; cx < 3; ++cx) {
    for (int cy = 0; cy < colors_y; ++cy) {
      std::fill(probe.begin(), probe.end(), 0.0);
      for (int i = cx; i < g.nodes(0); i += 3)
        for (int j = cy; j < ny; j += colors_y) probe[g.index(i, j)] = 1.0;
      lap.apply(probe, out);
      for (int i = 0; i < g.nodes(0); ++i) {
        for (int j = 0; j < ny; ++j) {
          const std::size_t row = g.index(i, j);
          if (column[row] < 0 || out[row] == 0.0) continue;
          // Source probe: the node of this color within one step of (i, j).
          const int si = i - ((i - cx) % 3 + 3) % 3 + ((((i - cx) % 3 + 3) % 3) == 2 ? 3 : 0);
          const int sj = g.dim() == 2 ? j - ((j - cy) % 3 + 3) % 3 + ((((j - cy) % 3 + 3) % 3) == 2 ? 3 : 0) : 0;
          const long col = column[g.index(si, sj)];
          if (col >= 0) triplets.emplace_back(column[row], col, out[row]);
        }
      }
    }
  }
  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(active.size()),
                                static_cast<Eigen::Index>(active.size()));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

ScalarField direct_helmholtz_solve(const HelmholtzProblem& problem, double sigma) {
  const double s2 = sigma * sigma;
  const auto& active = problem.active_nodes();
  if (active.size() > kMaxDirectUnknowns)
    throw DomainError("too many unknowns for a direct solve (limit 400000)");
  bool box = problem.constant_speed();
  for (int s = 0; box && s < 2 * problem.grid().dim(); ++s)
    box = problem.bcs().at(static_cast<Side>(s)) == BoundaryCondition::Dirichlet;
  if (box) {
    for (double l2 : lambda_squared(problem))
      if (std::abs(l2 - s2) <= 1e-12 * s2)
        throw ResonanceError("sigma^2 coincides with an eigenvalue of L_h");
  }

  Eigen::SparseMatrix<double> a = -assemble_laplacian(problem);
  for (Eigen::Index k = 0; k < a.rows(); ++k) a.coeffRef(k, k) += s2;
  a.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw ResonanceError("Helmholtz matrix is singular");
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(active.size()));
  for (std::size_t k = 0; k < active.size(); ++k) rhs(static_cast<Eigen::Index>(k)) = problem.forcing()[active[k]];
  const Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) throw ResonanceError("Helmholtz solve failed");
  ScalarField v(problem.grid());
  for (std::size_t k = 0; k < active.size(); ++k) v[active[k]] = x(static_cast<Eigen::Index>(k));
  return v;
}

double helmholtz_residual(const HelmholtzProblem& problem, const ScalarField& v, double sigma) {
  ScalarField r = apply_discrete_laplacian(problem, v);
  r *= -1.0;
  r.axpy(sigma * sigma, v);
  r -= problem.forcing();
  problem.zero_dirichlet(r);
  return norm2(r) / norm2(problem.forcing());
}

ScalarField pi_apply_spectral(const ScalarField& v, const HelmholtzProblem& problem,
                              const WaveHoltzConfig& config) {
  require_dirichlet_box(problem);
  if (config.scheme != Scheme::Leapfrog)
    throw UnsupportedError("the modal map describes the leapfrog scheme only");
  const double dt = config.tg.dt();
  const double drive = config.corrected ? corrected_forcing_frequency(problem.omega(), dt)
                                        : problem.omega();
  const double modified = modified_frequency(drive, dt);
  const double beta_drive = beta_by_quadrature(drive, config.spec, config.tg);

  const auto l2 = lambda_squared(problem);
  auto vh = sine_transform(v);
  const auto fh = sine_transform(problem.forcing());
  for (std::size_t j = 0; j < vh.size(); ++j) {
    const double lambda = std::sqrt(l2[j]);
    const double beta = beta_by_quadrature(shifted_eigenfrequency(lambda, dt), config.spec, config.tg);
    const double p = fh[j] / (modified * modified - l2[j]);
    vh[j] = (vh[j] - p) * beta + p * beta_drive;
  }
  return inverse_sine_transform(problem.grid(), vh);
}

double trapezoid_factor(double x) {
  if (std::abs(x) < 1e-6) return 1.0 - x * x / 12.0;
  return x / (2.0 * std::tan(x / 2.0));
}

TrapezoidReference trapezoid_reference(double alpha, int M) {
  if (M < 1) throw DomainError("trapezoid rule needs at least one interval");
  const double h = 1.0 / M;
  if (std::abs(alpha * h) > pi) throw DomainError("trapezoid reference needs |alpha / M| <= pi");
  TrapezoidReference r;
  long double s = 0.0L;
  for (int n = 0; n <= M; ++n) {
    const double eta = (n == 0 || n == M) ? 0.5 : 1.0;
    s += eta * std::cos(alpha * n * h);
  }
  r.direct = static_cast<double>(s * h);
  r.exact = alpha == 0.0 ? 1.0 : std::sin(alpha) / alpha;
  r.closed_form = trapezoid_factor(h * alpha) * r.exact;
  r.bound = h * h * std::abs(alpha) / 12.0;
  return r;
}

}  // namespace waveholtz::oracle
