#include "waveholtz/boundary.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "waveholtz/errors.hpp"

namespace waveholtz {

std::string_view to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Dirichlet: return "dirichlet";
    case BoundaryCondition::Neumann: return "neumann";
    case BoundaryCondition::Impedance: return "impedance";
  }
  return "?";
}

BoundaryCondition parse_boundary_condition(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "d" || s == "dirichlet") return BoundaryCondition::Dirichlet;
  if (s == "n" || s == "neumann") return BoundaryCondition::Neumann;
  if (s == "i" || s == "impedance") return BoundaryCondition::Impedance;
  throw DomainError("unknown boundary condition '" + std::string(text) + "'");
}

BoundarySpec BoundarySpec::uniform(int dim, BoundaryCondition bc) {
  if (dim != 1 && dim != 2) throw StructuralError("boundary spec dimension must be 1 or 2");
  BoundarySpec spec;
  spec.dim_ = dim;
  spec.sides_.fill(bc);
  return spec;
}

BoundarySpec BoundarySpec::line(BoundaryCondition left, BoundaryCondition right) {
  BoundarySpec spec = uniform(1, left);
  spec.sides_[1] = right;
  return spec;
}

BoundarySpec BoundarySpec::box(BoundaryCondition xlo, BoundaryCondition xhi,
                               BoundaryCondition ylo, BoundaryCondition yhi) {
  BoundarySpec spec;
  spec.dim_ = 2;
  spec.sides_ = {xlo, xhi, ylo, yhi};
  return spec;
}

bool BoundarySpec::has(BoundaryCondition bc) const {
  for (int s = 0; s < 2 * dim_; ++s)
    if (sides_[s] == bc) return true;
  return false;
}

bool BoundarySpec::energy_conserving() const { return !has(BoundaryCondition::Impedance); }

BoundarySpec& BoundarySpec::with_impedance(double alpha, double beta) {
  if (std::abs(alpha * alpha + beta * beta - 1.0) > 1e-12)
    throw DomainError("impedance coefficients must satisfy alpha^2 + beta^2 = 1");
  if (!(beta > 0.0))
    throw DomainError("impedance beta must be positive (beta = 0 is a Dirichlet side)");
  alpha_ = alpha;
  beta_ = beta;
  return *this;
}

std::string BoundarySpec::label() const {
  std::string out;
  for (int s = 0; s < 2 * dim_; ++s) {
    if (s) out += '-';
    out += static_cast<char>(std::toupper(to_string(sides_[s]).front()));
  }
  return out;
}

}  // namespace waveholtz
