#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "deforma/combinatorics.hpp"
#include "deforma/error.hpp"
#include "deforma/hochschild.hpp"
#include "deforma/matrix.hpp"

namespace deforma::hopf {

using hochschild::AssociativeAlgebra;
using linalg::Matrix;
using linalg::Vector;

/// Elements of H^{(x) n} are vectors of length d^n indexed by flatten(i_1..i_n).
using Tensor = Vector;

/// Finite-dimensional Hopf algebra. Column a of the d^2 x d coproduct matrix
/// holds Delta(e_a) in H (x) H.
class HopfAlgebra {
 public:
  HopfAlgebra() = default;
  HopfAlgebra(AssociativeAlgebra algebra, Matrix coproduct, Vector counit, Matrix antipode,
              std::vector<std::size_t> generators = {})
      : algebra_(std::move(algebra)),
        coproduct_(std::move(coproduct)),
        counit_(std::move(counit)),
        antipode_(std::move(antipode)),
        generators_(std::move(generators)) {
    const std::size_t d = algebra_.dim();
    if (coproduct_.rows() != d * d || coproduct_.cols() != d) throw MalformedInput("coproduct must be d^2 x d");
    if (counit_.size() != d) throw MalformedInput("counit must have length d");
    if (antipode_.rows() != d || antipode_.cols() != d) throw MalformedInput("antipode must be d x d");
    if (generators_.empty())
      for (std::size_t i = 0; i < d; ++i) generators_.push_back(i);
    for (auto g : generators_)
      if (g >= d) throw MalformedInput("algebra generator index out of range");
  }

  std::size_t dim() const noexcept { return algebra_.dim(); }
  const AssociativeAlgebra& algebra() const noexcept { return algebra_; }
  const Matrix& coproduct() const noexcept { return coproduct_; }
  const Vector& counit() const noexcept { return counit_; }
  const Matrix& antipode() const noexcept { return antipode_; }
  const std::string& name() const noexcept { return algebra_.name(); }
  /// Basis elements generating H as an algebra; commuting with their images
  /// is enough for commuting with everything.
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }

  /// The ground field as a Hopf algebra.
  static HopfAlgebra trivial() {
    return HopfAlgebra(AssociativeAlgebra::ground_field(), Matrix{{1}}, Vector{1}, Matrix{{1}});
  }

  /// Group algebra from a multiplication table on elements 0..n-1 (0 is the
  /// identity). Delta(g) = g (x) g, eps(g) = 1, S(g) = g^{-1}.
  static HopfAlgebra group_algebra(const std::vector<std::vector<std::size_t>>& table, std::string name,
                                   std::vector<std::size_t> generators = {}) {
    const std::size_t n = table.size();
    Matrix mult(n, n * n), delta(n * n, n), s(n, n);
    Vector eps(n, Rational(1)), unit(n);
    unit[0] = 1;
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a].size() != n) throw MalformedInput("group table must be square");
      for (std::size_t b = 0; b < n; ++b) {
        mult.set(table[a][b], a * n + b, Rational(1));
        if (table[a][b] == 0) s.set(b, a, Rational(1));
      }
      delta.set(a * n + a, a, Rational(1));
    }
    return HopfAlgebra(AssociativeAlgebra(n, std::move(mult), std::move(unit), std::move(name)), std::move(delta),
                       std::move(eps), std::move(s), std::move(generators));
  }

  static HopfAlgebra cyclic(std::size_t n) {
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return group_algebra(t, "kC" + std::to_string(n), n > 1 ? std::vector<std::size_t>{1} : std::vector<std::size_t>{});
  }

  /// Permutations of {0,1,2} in lexicographic order; composition (p q)(i) = p(q(i)).
  static HopfAlgebra symmetric3() {
    std::vector<std::array<std::size_t, 3>> perms;
    std::array<std::size_t, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const std::size_t n = perms.size();
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::array<std::size_t, 3> c{};
        for (std::size_t i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
        t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
      }
    // (0 2 1) is a transposition, (1 2 0) a 3-cycle; together they generate.
    return group_algebra(t, "kS3", {1, 3});
  }

  /// Sweedler's 4-dimensional Hopf algebra: basis 1, g, x, gx with g^2 = 1,
  /// x^2 = 0, xg = -gx; Delta g = g (x) g, Delta x = x (x) 1 + g (x) x,
  /// eps(g) = 1, eps(x) = 0, S(g) = g, S(x) = -gx.
  static HopfAlgebra sweedler() {
    // Basis element g^a x^b has index a + 2b.
    auto index = [](int a, int b) { return static_cast<std::size_t>(a + 2 * b); };
    Matrix mult(4, 16);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int e = 0; e < 2; ++e) {
            if (b + e >= 2) continue;
            const Rational sign = (b * c) % 2 ? -1 : 1;  // x^b g^c = (-1)^{bc} g^c x^b
            mult.set(index((a + c) % 2, b + e), index(a, b) * 4 + index(c, e), sign);
          }
    AssociativeAlgebra alg(4, std::move(mult), Vector{1, 0, 0, 0}, "sweedler4");
    // Coproduct: Delta(g^a x^b) = Delta(g)^a Delta(x)^b in H (x) H.
    auto tensor_mul = [&alg](const Vector& u, const Vector& v) {
      Vector out(16);
      for (std::size_t i = 0; i < 16; ++i) {
        if (is_zero(u[i])) continue;
        for (std::size_t j = 0; j < 16; ++j) {
          if (is_zero(v[j])) continue;
          const Vector l = alg.multiply(alg.basis_vector(i / 4), alg.basis_vector(j / 4));
          const Vector r = alg.multiply(alg.basis_vector(i % 4), alg.basis_vector(j % 4));
          for (std::size_t p = 0; p < 4; ++p)
            for (std::size_t q = 0; q < 4; ++q)
              if (!is_zero(l[p]) && !is_zero(r[q])) out[p * 4 + q] += u[i] * v[j] * l[p] * r[q];
        }
      }
      return out;
    };
    Vector one(16), dg(16), dx(16);
    one[0] = 1;
    dg[1 * 4 + 1] = 1;
    dx[2 * 4 + 0] = 1;
    dx[1 * 4 + 2] = 1;
    const std::vector<Vector> images{one, dg, dx, tensor_mul(dg, dx)};
    Matrix delta = Matrix::from_columns(images, 16);
    Matrix s(4, 4);
    s.set(0, 0, Rational(1));
    s.set(1, 1, Rational(1));
    s.set(3, 2, Rational(-1));  // S(x) = -gx
    s.set(2, 3, Rational(1));   // S(gx) = S(x) S(g) = -gxg = x
    return HopfAlgebra(std::move(alg), std::move(delta), Vector{1, 1, 0, 0}, std::move(s), {1, 2});
  }

 private:
  AssociativeAlgebra algebra_;
  Matrix coproduct_;
  Vector counit_;
  Matrix antipode_;
  std::vector<std::size_t> generators_;
};

/// Slotwise product in H^{(x) n}.
inline Tensor tensor_multiply(const HopfAlgebra& h, std::size_t n, const Tensor& x, const Tensor& y) {
  const std::size_t d = h.dim(), total = ipow(d, n);
  if (x.size() != total || y.size() != total) throw DomainError("tensor has wrong length");
  // Nonzero products of basis vectors.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> prod(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (const auto& [col, v] : h.algebra().table().row(k)) prod[col].emplace_back(k, v);
  auto nonzeros = [](const Tensor& t) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (!is_zero(t[i])) idx.push_back(i);
    return idx;
  };
  const auto nx = nonzeros(x), ny = nonzeros(y);
  Tensor out(total);
  for (auto i : nx) {
    const IndexList a = unflatten(i, d, n);
    for (auto j : ny) {
      const IndexList b = unflatten(j, d, n);
      // Expand the tensor product of the slot products.
      std::vector<std::pair<std::size_t, Rational>> acc{{0, x[i] * y[j]}};
      for (std::size_t s = 0; s < n && !acc.empty(); ++s) {
        std::vector<std::pair<std::size_t, Rational>> next;
        for (const auto& [code, c] : acc)
          for (const auto& [k, v] : prod[a[s] * d + b[s]]) next.emplace_back(code * d + k, c * v);
        acc = std::move(next);
      }
      for (const auto& [code, c] : acc) out[code] += c;
    }
  }
  return out;
}

/// u (x) v in H^{(x)(p+q)}.
inline Tensor tensor_product(const Tensor& u, const Tensor& v) {
  Tensor out(u.size() * v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (is_zero(u[i])) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!is_zero(v[j])) out[i * v.size() + j] = u[i] * v[j];
  }
  return out;
}

/// Applies Delta to tensor slot `slot` (0-based) of x in H^{(x) n}.
inline Tensor coproduct_at(const HopfAlgebra& h, std::size_t n, const Tensor& x, std::size_t slot) {
  const std::size_t d = h.dim();
  if (slot >= n) throw DomainError("coproduct slot out of range");
  if (x.size() != ipow(d, n)) throw DomainError("tensor has wrong length");
  Tensor out(ipow(d, n + 1));
  const std::size_t after = ipow(d, n - slot - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_zero(x[i])) continue;
    const std::size_t low = i % after, mid = (i / after) % d, high = i / after / d;
    for (std::size_t p = 0; p < d * d; ++p) {
      const Rational c = h.coproduct().at(p, mid);
      if (!is_zero(c)) out[(high * d * d + p) * after + low] += x[i] * c;
    }
  }
  return out;
}

/// Delta^{(n)}(y): eps for n = 0, the identity for n = 1, then iterated on
/// the first slot.
inline Tensor iterated_coproduct(const HopfAlgebra& h, std::size_t n, const Vector& y) {
  if (n == 0) {
    Rational e = 0;
    for (std::size_t i = 0; i < y.size(); ++i) e += h.counit()[i] * y[i];
    return Tensor{e};
  }
  Tensor t = y;
  for (std::size_t k = 1; k < n; ++k) t = coproduct_at(h, k, t, 0);
  return t;
}

struct HopfCheck {
  bool ok = true;
  std::string message;
};

/// Algebra axioms, coassociativity, counit laws, multiplicativity of Delta
/// and eps, and the antipode axioms, all on basis elements.
inline HopfCheck check_hopf(const HopfAlgebra& h) {
  if (auto r = hochschild::check_algebra(h.algebra()); !r.ok) return {false, r.message};
  const std::size_t d = h.dim();
  const auto& a = h.algebra();
  auto fail = [](const std::string& what, std::size_t i) {
    return HopfCheck{false, what + " fails on basis element " + std::to_string(i)};
  };
  for (std::size_t i = 0; i < d; ++i) {
    const Vector e = a.basis_vector(i);
    const Tensor de = coproduct_at(h, 1, e, 0);
    if (coproduct_at(h, 2, de, 0) != coproduct_at(h, 2, de, 1)) return fail("coassociativity", i);
    Vector left(d), right(d);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) {
        left[q] += h.counit()[p] * de[p * d + q];
        right[p] += h.counit()[q] * de[p * d + q];
      }
    if (left != e || right != e) return fail("counit law", i);
    Vector s_left(d), s_right(d);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) {
        if (is_zero(de[p * d + q])) continue;
        const Vector l = a.multiply(h.antipode().column(p), a.basis_vector(q));
        const Vector r = a.multiply(a.basis_vector(p), h.antipode().column(q));
        for (std::size_t o = 0; o < d; ++o) {
          s_left[o] += de[p * d + q] * l[o];
          s_right[o] += de[p * d + q] * r[o];
        }
      }
    Vector expect = a.unit();
    for (auto& x : expect) x *= h.counit()[i];
    if (s_left != expect || s_right != expect) return fail("antipode axiom", i);
    for (std::size_t j = 0; j < d; ++j) {
      const Vector f = a.basis_vector(j);
      const Vector ef = a.multiply(e, f);
      if (coproduct_at(h, 1, ef, 0) != tensor_multiply(h, 2, de, coproduct_at(h, 1, f, 0)))
        return fail("multiplicativity of the coproduct", i);
      Rational eps = 0;
      for (std::size_t o = 0; o < d; ++o) eps += h.counit()[o] * ef[o];
      if (eps != h.counit()[i] * h.counit()[j]) return fail("multiplicativity of the counit", i);
    }
  }
  if (coproduct_at(h, 1, a.unit(), 0) != tensor_product(a.unit(), a.unit()))
    return {false, "coproduct does not preserve the unit"};
  return {};
}

inline void require_hopf(const HopfAlgebra& h) {
  if (auto r = check_hopf(h); !r.ok) throw InvariantViolation(r.message);
}

}  // namespace deforma::hopf
