#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "deforma/combinatorics.hpp"
#include "deforma/error.hpp"
#include "deforma/lie.hpp"
#include "deforma/tower.hpp"

namespace deforma::poisson {

using lie::LieAlgebra;
using linalg::Matrix;
using linalg::Vector;

/// Bound on the number of monomials of a single weight piece.
inline constexpr std::size_t kDefaultBasisCap = 20000;
/// Bound on the weight of any bracket or product.
inline constexpr std::size_t kDefaultWeightCap = 12;

/// Element of Sym(g[-n]): monomials are sorted index lists. For odd n the
/// generators anticommute, so monomials are strictly increasing (wedge
/// words); for even n they commute (multisets).
using Polyvector = std::map<IndexList, Rational>;

inline bool odd_shift(int n) { return n % 2 != 0; }

inline void require_shift(int n) {
  if (n < 1) throw DomainError("shift n must be >= 1");
}

inline lie::PowerKind power_kind(int n) { return odd_shift(n) ? lie::PowerKind::Wedge : lie::PowerKind::Sym; }

/// Number of monomials of weight w in d generators.
inline std::size_t weight_piece_size(std::size_t d, int n, std::size_t w) {
  if (w == 0) return 1;
  return odd_shift(n) ? binomial(d, w) : binomial(d + w - 1, w);
}

inline void add_term(Polyvector& p, IndexList m, const Rational& c) {
  if (is_zero(c)) return;
  auto [it, inserted] = p.emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (is_zero(it->second)) p.erase(it);
  }
}

inline Polyvector generator(std::size_t i) { return {{IndexList{i}, Rational(1)}}; }

inline std::size_t weight_of(const Polyvector& p) {
  std::size_t w = 0;
  for (const auto& [m, c] : p) w = std::max(w, m.size());
  return w;
}

namespace detail {

/// Sorts a word; for odd shift returns the Koszul sign, 0 on a repeated
/// letter.
inline int normalize(IndexList& w, bool odd) {
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
      std::swap(w[j - 1], w[j]);
      sign = -sign;
    }
  if (!odd) return 1;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return 0;
  return sign;
}

inline void check_weight(std::size_t w, std::size_t cap) {
  if (w > cap)
    throw CapExceeded("polyvector weight " + std::to_string(w) + " above the cap " + std::to_string(cap));
}

}  // namespace detail

/// Graded-commutative product in Sym(g[-n]).
inline Polyvector multiply(int n, const Polyvector& p, const Polyvector& q,
                           std::size_t weight_cap = kDefaultWeightCap) {
  require_shift(n);
  detail::check_weight(weight_of(p) + weight_of(q), weight_cap);
  Polyvector out;
  for (const auto& [a, x] : p)
    for (const auto& [b, y] : q) {
      IndexList w = a;
      w.insert(w.end(), b.begin(), b.end());
      const int s = detail::normalize(w, odd_shift(n));
      if (s) add_term(out, std::move(w), x * y * s);
    }
  return out;
}

/// Biderivation extending the Lie bracket on generators:
///   {P, Q} = sum_{i,j} (P d<_i) [x_i, x_j] (d>_j Q)
/// with right derivatives on P and left derivatives on Q. For even n this is
/// the Kirillov-Kostant bracket on Sym g; for odd n the Schouten bracket on
/// the exterior algebra.
inline Polyvector schouten_bracket(const LieAlgebra& l, int n, const Polyvector& p, const Polyvector& q,
                                   std::size_t weight_cap = kDefaultWeightCap) {
  require_shift(n);
  const bool odd = odd_shift(n);
  const std::size_t wp = weight_of(p), wq = weight_of(q);
  if (wp && wq) detail::check_weight(wp + wq - 1, weight_cap);
  Polyvector out;
  for (const auto& [a, x] : p)
    for (std::size_t s = 0; s < a.size(); ++s) {
      // Right derivative: move letter s to the end.
      const int right = odd && (a.size() - 1 - s) % 2 ? -1 : 1;
      IndexList rest_a = a;
      rest_a.erase(rest_a.begin() + static_cast<std::ptrdiff_t>(s));
      for (const auto& [b, y] : q)
        for (std::size_t t = 0; t < b.size(); ++t) {
          // Left derivative: move letter t to the front.
          const int left = odd && t % 2 ? -1 : 1;
          IndexList rest_b = b;
          rest_b.erase(rest_b.begin() + static_cast<std::ptrdiff_t>(t));
          const Vector br = l.bracket(l.basis_vector(a[s]), l.basis_vector(b[t]));
          for (std::size_t k = 0; k < br.size(); ++k) {
            if (is_zero(br[k])) continue;
            IndexList w = rest_a;
            w.push_back(k);
            w.insert(w.end(), rest_b.begin(), rest_b.end());
            const int sign = detail::normalize(w, odd);
            if (sign) add_term(out, std::move(w), x * y * br[k] * (sign * left * right));
          }
        }
    }
  return out;
}

/// Basis of the G-invariants of weight w, as polyvectors.
inline std::vector<Polyvector> invariant_elements(const LieAlgebra& l, int n, std::size_t w,
                                                  std::size_t basis_cap = kDefaultBasisCap) {
  require_shift(n);
  if (odd_shift(n) && w > l.dim()) return {};
  const std::size_t size = weight_piece_size(l.dim(), n, w);
  if (size > basis_cap)
    throw CapExceeded("weight " + std::to_string(w) + " piece has " + std::to_string(size) +
                      " monomials, above the cap " + std::to_string(basis_cap));
  const auto rep = lie::power_rep(l, power_kind(n), w);
  const Matrix basis = lie::invariant_basis(rep);
  std::vector<Polyvector> out;
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    Polyvector p;
    const Vector col = basis.column(c);
    for (std::size_t i = 0; i < col.size(); ++i) add_term(p, rep.basis_labels()[i], col[i]);
    out.push_back(std::move(p));
  }
  return out;
}

/// Weight w lives in cohomological degree n w.
struct PolyvectorTable {
  int shift = 1;
  std::vector<std::size_t> dims;  // index = weight

  int degree(std::size_t weight) const { return shift * static_cast<int>(weight); }
};

/// Invariant dimension of Sym^w(g[-n]) for w = 0..W.
inline PolyvectorTable polyvector_dims(const LieAlgebra& l, int n, std::size_t max_weight,
                                       std::size_t basis_cap = kDefaultBasisCap) {
  require_shift(n);
  PolyvectorTable t;
  t.shift = n;
  for (std::size_t w = 0; w <= max_weight; ++w) {
    if (odd_shift(n) && w > l.dim()) {
      t.dims.push_back(0);
      continue;
    }
    const std::size_t size = weight_piece_size(l.dim(), n, w);
    if (size > basis_cap)
      throw CapExceeded("weight " + std::to_string(w) + " piece has " + std::to_string(size) +
                        " monomials, above the cap " + std::to_string(basis_cap));
    t.dims.push_back(lie::invariant_dim(lie::power_rep(l, power_kind(n), w)));
  }
  return t;
}

/// Throws InvariantViolation unless every invariant of weight 1..max_weight
/// brackets to zero with every generator. By the Leibniz rule this makes the
/// bracket vanish on invariants against all of Sym(g[-n]).
inline void verify_centrality(const LieAlgebra& l, int n, std::size_t max_weight,
                              std::size_t basis_cap = kDefaultBasisCap) {
  for (std::size_t w = 1; w <= max_weight; ++w)
    for (const auto& p : invariant_elements(l, n, w, basis_cap))
      for (std::size_t j = 0; j < l.dim(); ++j)
        if (!schouten_bracket(l, n, p, generator(j)).empty())
          throw InvariantViolation("invariant of weight " + std::to_string(w) + " is not central against generator " +
                                   std::to_string(j));
}

/// Weight w with n w = n + 2 and w >= 2; 0 when no such weight exists.
inline std::size_t poisson_weight(int n) {
  require_shift(n);
  return (n + 2) % n == 0 && (n + 2) / n >= 2 ? static_cast<std::size_t>((n + 2) / n) : 0;
}

/// Dimension of pi_0 Poiss(BG, n). With zero differential and a bracket that
/// vanishes on invariants, every degree-(n+2) invariant of weight >= 2 solves
/// the Maurer-Cartan system and the gauge action is trivial.
inline std::size_t poisson_pi0(const LieAlgebra& l, int n, std::size_t basis_cap = kDefaultBasisCap) {
  require_shift(n);
  lie::require_lie(l);
  const std::size_t w = poisson_weight(n);
  if (w == 0) return 0;
  verify_centrality(l, n, w, basis_cap);
  return polyvector_dims(l, n, w, basis_cap).dims[w];
}

/// Weights needed to see degrees up to N + 2 = n + 4, and at least 4.
inline std::size_t default_tangent_weight(int n) {
  require_shift(n);
  return std::max<std::size_t>(4, 1 + static_cast<std::size_t>((4 + n - 1) / n));
}

/// Tangent data of the E_{n+2} deformation problem of Rep(G):
/// k + fib(Sym(g[-n])^G -> k), so h^{n w} = dim Sym^w(g[-n])^G for w >= 1.
inline tower::TangentProfile induced_tangent(const LieAlgebra& l, int n, std::size_t max_weight = 0,
                                             std::size_t basis_cap = kDefaultBasisCap) {
  require_shift(n);
  const std::size_t top = max_weight ? max_weight : default_tangent_weight(n);
  const auto table = polyvector_dims(l, n, top, basis_cap);
  tower::TangentProfile t;
  t.level = n + 2;
  for (std::size_t w = 1; w <= top; ++w)
    if (table.dims[w]) t.h[table.degree(w)] = table.dims[w];
  return t;
}

}  // namespace deforma::poisson
