#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace waveholtz {

/// Uniform Cartesian node layout on [lo, hi] (1D) or [lo, hi]^2 (2D).
///
/// Node i along dimension d sits at lo[d] + i * h[d], i = 0..n[d]; boundary
/// nodes are stored. Values are laid out row-major, so in 2D the node (i, j)
/// has flat index i * (n[1] + 1) + j.
class UniformGrid {
 public:
  static UniformGrid line(double lo, double hi, int n);
  static UniformGrid box(std::array<double, 2> lo, std::array<double, 2> hi, std::array<int, 2> n);

  int dim() const noexcept { return dim_; }
  double lo(int d) const { return lo_[d]; }
  double hi(int d) const { return hi_[d]; }
  int cells(int d) const { return n_[d]; }
  int nodes(int d) const { return n_[d] + 1; }
  double spacing(int d) const { return h_[d]; }
  double min_spacing() const;

  /// Product of the spacings; the volume element of the discrete L2 product.
  double cell_volume() const;
  std::size_t node_count() const;

  double coord(int d, int i) const { return lo_[d] + i * h_[d]; }
  std::size_t index(int i, int j = 0) const {
    return dim_ == 1 ? static_cast<std::size_t>(i)
                     : static_cast<std::size_t>(i) * (n_[1] + 1) + j;
  }

  bool operator==(const UniformGrid&) const = default;

 private:
  UniformGrid() = default;

  int dim_ = 1;
  std::array<double, 2> lo_{0.0, 0.0};
  std::array<double, 2> hi_{1.0, 1.0};
  std::array<int, 2> n_{2, 0};
  std::array<double, 2> h_{0.5, 1.0};
};

/// Nodal data over a UniformGrid.
class ScalarField {
 public:
  explicit ScalarField(const UniformGrid& grid, double value = 0.0);
  ScalarField(const UniformGrid& grid, std::vector<double> values);

  template <class F>
  static ScalarField sample(const UniformGrid& grid, F&& f);

  const UniformGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);
  /// this += a * x
  ScalarField& axpy(double a, const ScalarField& x);

 private:
  UniformGrid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Discrete L2 product sum_i a_i b_i * prod_d h[d].
double inner_product(const ScalarField& a, const ScalarField& b);
double norm2(const ScalarField& a);
double max_abs(const ScalarField& a);

template <class F>
ScalarField ScalarField::sample(const UniformGrid& grid, F&& f) {
  ScalarField out(grid);
  if (grid.dim() == 1) {
    for (int i = 0; i < grid.nodes(0); ++i) out[grid.index(i)] = f(grid.coord(0, i), 0.0);
  } else {
    for (int i = 0; i < grid.nodes(0); ++i)
      for (int j = 0; j < grid.nodes(1); ++j)
        out[grid.index(i, j)] = f(grid.coord(0, i), grid.coord(1, j));
  }
  return out;
}

}  // namespace waveholtz
