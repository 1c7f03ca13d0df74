#pragma once

#include <cstddef>
#include <string>

#include "deforma/error.hpp"
#include "deforma/matrix.hpp"

namespace deforma::artin {

using linalg::Vector;

/// k[x]/x^m with basis 1, x, ..., x^{m-1}. Elements are coefficient vectors
/// of length m.
class ArtinMonomialAlgebra {
 public:
  explicit ArtinMonomialAlgebra(int order) : order_(order) {
    if (order < 1) throw DomainError("k[x]/x^m needs m >= 1");
  }

  int order() const noexcept { return order_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(order_); }
  std::size_t ideal_dimension() const noexcept { return dimension() - 1; }

  Vector one() const { return basis_element(0); }
  Vector generator() const { return order_ > 1 ? basis_element(1) : Vector(dimension()); }
  Vector basis_element(int power) const {
    Vector v(dimension());
    if (power < order_) v[static_cast<std::size_t>(power)] = 1;
    return v;
  }

  /// Truncated convolution.
  Vector multiply(const Vector& u, const Vector& v) const {
    if (u.size() != dimension() || v.size() != dimension())
      throw DomainError("element length does not match k[x]/x^" + std::to_string(order_));
    Vector w(dimension());
    for (std::size_t a = 0; a < dimension(); ++a) {
      if (is_zero(u[a])) continue;
      for (std::size_t b = 0; a + b < dimension(); ++b) w[a + b] += u[a] * v[b];
    }
    return w;
  }

  std::string name() const { return "k[x]/x^" + std::to_string(order_); }

 private:
  int order_;
};

inline Vector multiply_in_artin(const ArtinMonomialAlgebra& a, const Vector& u, const Vector& v) {
  return a.multiply(u, v);
}

/// k + k[m]: one generator in cohomological degree -m, all products of
/// generators zero. Elements are pairs (unit coefficient, generator coefficient).
class SquareZeroExtension {
 public:
  explicit SquareZeroExtension(int shift) : shift_(shift) {
    if (shift < 0) throw DomainError("square-zero extension shift must be >= 0");
  }
  int shift() const noexcept { return shift_; }
  int generator_degree() const noexcept { return -shift_; }
  std::size_t ideal_dimension() const noexcept { return 1; }

  Vector multiply(const Vector& u, const Vector& v) const {
    if (u.size() != 2 || v.size() != 2) throw DomainError("k+k[m] elements have length 2");
    return {u[0] * v[0], u[0] * v[1] + u[1] * v[0]};
  }

  std::string name() const { return "k+k[" + std::to_string(shift_) + "]"; }

 private:
  int shift_;
};

/// Outcome of checking the Artin conditions for a classical (ungraded or
/// connective) commutative test algebra.
struct ArtinCheck {
  bool connective = false;
  bool truncated = false;
  bool finite_dimensional = false;
  bool residue_field_is_k = false;
  std::size_t nilpotency_index = 0;  // least r with (maximal ideal)^r = 0

  bool ok() const {
    return connective && truncated && finite_dimensional && residue_field_is_k;
  }
};

/// Verifies the conditions by computation: the ideal spanned by x, ..., x^{m-1}
/// must be nilpotent (so it is the radical) with one-dimensional quotient.
inline ArtinCheck check_artin(const ArtinMonomialAlgebra& a) {
  ArtinCheck c;
  c.connective = true;  // concentrated in degree 0
  c.truncated = true;
  c.finite_dimensional = true;
  // Powers of the generator until they vanish.
  Vector p = a.generator();
  std::size_t r = 1;
  auto zero = [](const Vector& v) {
    for (const auto& x : v)
      if (!is_zero(x)) return false;
    return true;
  };
  while (!zero(p) && r <= a.dimension()) {
    p = a.multiply(p, a.generator());
    ++r;
  }
  c.nilpotency_index = zero(p) ? r : 0;
  // The unit is not nilpotent, so the radical is exactly the ideal and the
  // residue algebra is spanned by the class of 1.
  const Vector one_sq = a.multiply(a.one(), a.one());
  c.residue_field_is_k = c.nilpotency_index != 0 && !zero(one_sq) &&
                         a.dimension() - a.ideal_dimension() == 1;
  return c;
}

inline ArtinCheck check_artin(const SquareZeroExtension& a) {
  ArtinCheck c;
  c.connective = a.generator_degree() <= 0;
  c.truncated = true;
  c.finite_dimensional = true;
  const Vector eps{0, 1};
  c.residue_field_is_k = a.multiply(eps, eps) == Vector{0, 0};
  c.nilpotency_index = 2;
  return c;
}

}  // namespace deforma::artin
