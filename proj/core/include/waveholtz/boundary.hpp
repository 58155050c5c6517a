#pragma once

#include <array>
#include <string>
#include <string_view>

namespace waveholtz {

enum class BoundaryCondition { Dirichlet, Neumann, Impedance };

/// Box sides in the order x-low, x-high, y-low, y-high.
enum class Side { XLo = 0, XHi = 1, YLo = 2, YHi = 3 };

constexpr Side side_of(int dim, bool high) {
  return static_cast<Side>(2 * dim + (high ? 1 : 0));
}

std::string_view to_string(BoundaryCondition bc);
/// Accepts "dirichlet"/"D", "neumann"/"N", "impedance"/"I" (case-insensitive).
BoundaryCondition parse_boundary_condition(std::string_view text);

/// One homogeneous condition per side of the box.
///
/// Impedance sides impose alpha * w_t + beta * n.grad(w) = 0 with the outward
/// normal n. The default alpha = beta = 1/sqrt(2) is the outgoing-wave condition
/// w_t + n.grad(w) = 0 for c = 1.
class BoundarySpec {
 public:
  BoundarySpec() = default;
  /// Same condition on every side of a dim-dimensional box.
  static BoundarySpec uniform(int dim, BoundaryCondition bc);
  static BoundarySpec line(BoundaryCondition left, BoundaryCondition right);
  static BoundarySpec box(BoundaryCondition xlo, BoundaryCondition xhi, BoundaryCondition ylo,
                          BoundaryCondition yhi);

  int dim() const noexcept { return dim_; }
  BoundaryCondition at(Side s) const { return sides_[static_cast<int>(s)]; }
  BoundaryCondition at(int d, bool high) const { return at(side_of(d, high)); }

  bool energy_conserving() const;
  bool has(BoundaryCondition bc) const;

  /// Coefficients of the impedance condition; requires alpha^2 + beta^2 = 1 and beta > 0.
  BoundarySpec& with_impedance(double alpha, double beta);
  double impedance_alpha() const noexcept { return alpha_; }
  double impedance_beta() const noexcept { return beta_; }

  /// Compact label such as "D-N" or "D-D-I-I".
  std::string label() const;

 private:
  int dim_ = 1;
  std::array<BoundaryCondition, 4> sides_{BoundaryCondition::Dirichlet, BoundaryCondition::Dirichlet,
                                          BoundaryCondition::Dirichlet, BoundaryCondition::Dirichlet};
  double alpha_ = 0.70710678118654752440;
  double beta_ = 0.70710678118654752440;
};

}  // namespace waveholtz
