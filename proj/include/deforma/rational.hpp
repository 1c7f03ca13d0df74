#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "deforma/error.hpp"

namespace deforma {

/// Exact scalar of the ground field Q. GMP keeps results of arithmetic in
/// canonical form (reduced, positive denominator).
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Throws MalformedInput on anything else,
/// including a zero denominator.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t start = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) start = 1;
    if (start == part.size()) return false;
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num, true) || !valid(den, false))
    throw MalformedInput("not a rational number: \"" + s + "\"");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw MalformedInput("zero denominator in \"" + s + "\"");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b.get_ui();
}

}  // namespace deforma
