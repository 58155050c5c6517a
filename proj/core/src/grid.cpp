#include "waveholtz/grid.hpp"

#include <algorithm>
#include <cmath>

#include "waveholtz/errors.hpp"

namespace waveholtz {

namespace {

void check_axis(double lo, double hi, int n) {
  if (!(hi > lo)) throw StructuralError("grid extent must satisfy hi > lo");
  if (n < 2) throw StructuralError("grid needs at least 2 cells per dimension");
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw StructuralError("fields live on different grids");
}

}  // namespace

UniformGrid UniformGrid::line(double lo, double hi, int n) {
  check_axis(lo, hi, n);
  UniformGrid g;
  g.dim_ = 1;
  g.lo_ = {lo, 0.0};
  g.hi_ = {hi, 0.0};
  g.n_ = {n, 0};
  g.h_ = {(hi - lo) / n, 1.0};
  return g;
}

UniformGrid UniformGrid::box(std::array<double, 2> lo, std::array<double, 2> hi,
                             std::array<int, 2> n) {
  check_axis(lo[0], hi[0], n[0]);
  check_axis(lo[1], hi[1], n[1]);
  UniformGrid g;
  g.dim_ = 2;
  g.lo_ = lo;
  g.hi_ = hi;
  g.n_ = n;
  g.h_ = {(hi[0] - lo[0]) / n[0], (hi[1] - lo[1]) / n[1]};
  return g;
}

double UniformGrid::min_spacing() const {
  return dim_ == 1 ? h_[0] : std::min(h_[0], h_[1]);
}

double UniformGrid::cell_volume() const { return dim_ == 1 ? h_[0] : h_[0] * h_[1]; }

std::size_t UniformGrid::node_count() const {
  std::size_t count = static_cast<std::size_t>(n_[0] + 1);
  if (dim_ == 2) count *= static_cast<std::size_t>(n_[1] + 1);
  return count;
}

ScalarField::ScalarField(const UniformGrid& grid, double value)
    : grid_(grid), values_(grid.node_count(), value) {}

ScalarField::ScalarField(const UniformGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.node_count())
    throw StructuralError("field length does not match the grid node count");
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& x : values_) x *= s;
  return *this;
}

ScalarField& ScalarField::axpy(double a, const ScalarField& x) {
  require_same_grid(*this, x);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += a * x.values_[k];
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

double inner_product(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  double sum = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) sum += av[k] * bv[k];
  return sum * a.grid().cell_volume();
}

double norm2(const ScalarField& a) { return std::sqrt(inner_product(a, a)); }

double max_abs(const ScalarField& a) {
  double m = 0.0;
  for (double x : a.values()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace waveholtz
