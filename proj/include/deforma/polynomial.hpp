#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "deforma/rational.hpp"

namespace deforma {

/// Multivariate polynomial over Q in variables t_0, t_1, ... Monomials map
/// variable index to a positive exponent.
class Polynomial {
 public:
  using Monomial = std::map<std::size_t, unsigned>;

  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT: implicit constants are convenient
    if (!deforma::is_zero(c)) terms_[{}] = c;
  }

  static Polynomial variable(std::size_t v) {
    Polynomial p;
    p.terms_[{{v, 1u}}] = 1;
    return p;
  }

  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  unsigned degree() const {
    unsigned best = 0;
    for (const auto& [m, c] : terms_) best = std::max(best, total_degree(m));
    return best;
  }

  std::set<std::size_t> variables() const {
    std::set<std::size_t> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m) out.insert(v);
    return out;
  }

  /// Coefficient of the linear monomial t_v.
  Rational linear_coefficient(std::size_t v) const {
    auto it = terms_.find(Monomial{{v, 1u}});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// If the polynomial is c * t_v^k with k >= 1, returns v.
  std::optional<std::size_t> single_variable_power() const {
    if (terms_.size() != 1) return std::nullopt;
    const auto& m = terms_.begin()->first;
    if (m.size() != 1) return std::nullopt;
    return m.begin()->first;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const { return scaled(Rational(-1)); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (const auto& [v, e] : mb) m[v] += e;
        out.add_term(m, ca * cb);
      }
    return out;
  }

  Polynomial scaled(const Rational& s) const {
    Polynomial out;
    if (deforma::is_zero(s)) return out;
    for (const auto& [m, c] : terms_) out.terms_[m] = c * s;
    return out;
  }

  /// Replaces t_v by q everywhere.
  Polynomial substitute(std::size_t v, const Polynomial& q) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
      auto it = m.find(v);
      if (it == m.end()) {
        out.add_term(m, c);
        continue;
      }
      Monomial rest = m;
      rest.erase(v);
      Polynomial term;
      term.terms_[rest] = c;
      for (unsigned k = 0; k < it->second; ++k) term = term * q;
      out += term;
    }
    return out;
  }

  Rational evaluate(const std::map<std::size_t, Rational>& point) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (const auto& [v, e] : m) {
        auto it = point.find(v);
        const Rational x = it == point.end() ? Rational(0) : it->second;
        for (unsigned k = 0; k < e; ++k) t *= x;
      }
      total += t;
    }
    return total;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Deterministic text form, e.g. "1/2*t0^2 - t1".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational a = c;
      if (first) {
        if (a < 0) os << "-";
      } else {
        os << (a < 0 ? " - " : " + ");
      }
      if (a < 0) a = -a;
      first = false;
      const bool unit = a == 1;
      if (!unit || m.empty()) os << deforma::to_string(a);
      bool sep = !unit || m.empty();
      for (const auto& [v, e] : m) {
        if (sep) os << "*";
        os << "t" << v;
        if (e > 1) os << "^" << e;
        sep = true;
      }
    }
    return os.str();
  }

 private:
  static unsigned total_degree(const Monomial& m) {
    unsigned d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (deforma::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (deforma::is_zero(it->second)) terms_.erase(it);
    }
  }

  std::map<Monomial, Rational> terms_;
};

/// Vector with polynomial entries.
using PolyVector = std::vector<Polynomial>;

}  // namespace deforma
