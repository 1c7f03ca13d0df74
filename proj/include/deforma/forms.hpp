#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "deforma/cochain_complex.hpp"
#include "deforma/combinatorics.hpp"
#include "deforma/error.hpp"

namespace deforma::artin {

/// Polynomial differential forms on the algebraic n-simplex, truncated at
/// polynomial degree D.
///
/// Elements are kept in normal form: t_0 = 1 - (t_1 + ... + t_n) and
/// dt_0 = -(dt_1 + ... + dt_n) are eliminated, so a monomial is
/// t_1^{a_1} ... t_n^{a_n} dt_{i_1} ^ ... ^ dt_{i_p} with i_1 < ... < i_p.
/// Products of total polynomial degree above D are dropped.
class PolyDiffForms {
 public:
  struct Monomial {
    std::vector<int> exponents;  // over t_1..t_n
    std::uint32_t wedge = 0;     // bit i-1 set <=> dt_i present

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
  };
  using Element = std::map<Monomial, Rational>;

  PolyDiffForms(int simplex_dim, int degree_cap) : n_(simplex_dim), cap_(degree_cap) {
    if (n_ < 0 || cap_ < 0) throw DomainError("simplex dimension and degree cap must be >= 0");
    if (n_ > 31) throw CapExceeded("simplex dimension above 31 is not supported");
  }

  int simplex_dim() const noexcept { return n_; }
  int degree_cap() const noexcept { return cap_; }

  Element unit() const { return {{Monomial{std::vector<int>(n_, 0), 0}, Rational(1)}}; }

  /// The coordinate t_i, 0 <= i <= n, in normal form.
  Element t(int i) const {
    check_coordinate(i);
    if (i > 0) {
      Monomial m{std::vector<int>(n_, 0), 0};
      m.exponents[i - 1] = 1;
      return truncate({{m, Rational(1)}});
    }
    Element e = unit();
    for (int j = 1; j <= n_; ++j) add_into(e, t(j), Rational(-1));
    return truncate(e);
  }

  /// dt_i in normal form.
  Element dt(int i) const {
    check_coordinate(i);
    if (i > 0) return {{Monomial{std::vector<int>(n_, 0), 1u << (i - 1)}, Rational(1)}};
    Element e;
    for (int j = 1; j <= n_; ++j) add_into(e, dt(j), Rational(-1));
    return e;
  }

  Element multiply(const Element& a, const Element& b) const {
    Element out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        if (ma.wedge & mb.wedge) continue;
        Monomial m{ma.exponents, ma.wedge | mb.wedge};
        int deg = 0;
        for (int k = 0; k < n_; ++k) {
          m.exponents[k] += mb.exponents[k];
          deg += m.exponents[k];
        }
        if (deg > cap_) continue;
        const Rational c = ca * cb * wedge_sign(ma.wedge, mb.wedge);
        add_term(out, m, c);
      }
    return out;
  }

  /// de Rham differential: d(t^a dt_I) = sum_k a_k t^{a - e_k} dt_k ^ dt_I.
  Element d(const Element& e) const {
    Element out;
    for (const auto& [m, c] : e)
      for (int k = 0; k < n_; ++k) {
        if (m.exponents[k] == 0) continue;
        const std::uint32_t bit = 1u << k;
        if (m.wedge & bit) continue;
        Monomial r{m.exponents, m.wedge | bit};
        r.exponents[k] -= 1;
        add_term(out, r, c * m.exponents[k] * wedge_sign(bit, m.wedge));
      }
    return out;
  }

  /// Monomial basis of the degree-p forms: exponent vectors of total degree
  /// <= D in graded lexicographic order, times p-subsets of dt_1..dt_n.
  std::vector<Monomial> basis(int p) const {
    std::vector<Monomial> out;
    if (p < 0 || p > n_) return out;
    const auto subsets = combinations(static_cast<std::size_t>(n_), static_cast<std::size_t>(p));
    for (const auto& expo : exponent_vectors())
      for (const auto& s : subsets) {
        std::uint32_t mask = 0;
        for (auto i : s) mask |= 1u << i;
        out.push_back({expo, mask});
      }
    return out;
  }

  /// The truncated de Rham complex in degrees 0..n.
  linalg::CochainComplex complex() const {
    std::vector<std::size_t> dims;
    std::vector<std::vector<Monomial>> bases;
    for (int p = 0; p <= n_; ++p) {
      bases.push_back(basis(p));
      dims.push_back(bases.back().size());
    }
    std::vector<linalg::Matrix> diffs;
    for (int p = 0; p <= n_; ++p) {
      const std::size_t target = p < n_ ? dims[p + 1] : 0;
      linalg::Matrix dm(target, dims[p]);
      if (p < n_) {
        std::map<Monomial, std::size_t> pos;
        for (std::size_t i = 0; i < bases[p + 1].size(); ++i) pos.emplace(bases[p + 1][i], i);
        for (std::size_t j = 0; j < bases[p].size(); ++j)
          for (const auto& [m, c] : d({{bases[p][j], Rational(1)}})) dm.add(pos.at(m), j, c);
      }
      diffs.push_back(std::move(dm));
    }
    return linalg::CochainComplex(0, std::move(dims), std::move(diffs));
  }

  static bool is_zero_element(const Element& e) { return e.empty(); }

  static void add_into(Element& acc, const Element& e, const Rational& factor) {
    for (const auto& [m, c] : e) add_term(acc, m, c * factor);
  }

 private:
  static void add_term(Element& e, const Monomial& m, const Rational& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = e.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) e.erase(it);
    }
  }

  // Sign of dt_A ^ dt_B when rewritten in increasing order.
  static int wedge_sign(std::uint32_t a, std::uint32_t b) {
    int swaps = 0;
    for (std::uint32_t rest = b; rest; rest &= rest - 1) {
      const std::uint32_t low = rest & (~rest + 1);
      swaps += std::popcount(a & ~(low | (low - 1)));  // bits of a above this bit of b
    }
    return swaps % 2 ? -1 : 1;
  }

  Element truncate(Element e) const {
    for (auto it = e.begin(); it != e.end();) {
      int deg = 0;
      for (int x : it->first.exponents) deg += x;
      it = deg > cap_ ? e.erase(it) : std::next(it);
    }
    return e;
  }

  std::vector<std::vector<int>> exponent_vectors() const {
    std::vector<std::vector<int>> out;
    for (int total = 0; total <= cap_; ++total) {
      // Compositions of `total` into n_ parts, lexicographically descending
      // in the first coordinate.
      std::vector<int> cur(n_, 0);
      if (n_ == 0) {
        if (total == 0) out.push_back(cur);
        continue;
      }
      auto rec = [&](auto&& self, int slot, int left) -> void {
        if (slot == n_ - 1) {
          cur[slot] = left;
          out.push_back(cur);
          return;
        }
        for (int v = left; v >= 0; --v) {
          cur[slot] = v;
          self(self, slot + 1, left - v);
        }
      };
      rec(rec, 0, total);
    }
    return out;
  }

  void check_coordinate(int i) const {
    if (i < 0 || i > n_) throw DomainError("simplex coordinate index out of range");
  }

  int n_;
  int cap_;
};

/// The truncated complex of polynomial differential forms on the n-simplex.
inline linalg::CochainComplex omega_complex(int simplex_dim, int degree_cap) {
  return PolyDiffForms(simplex_dim, degree_cap).complex();
}

}  // namespace deforma::artin
