#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <vector>

#include "support/dense_rank.hpp"

namespace deforma::testkit {

/// Structure of an algebra for the oracle: products of basis vectors as dense
/// coordinate vectors, with basis vector 0 equal to the unit.
struct UnitFirstAlgebra {
  std::size_t dim = 0;
  std::function<std::vector<mpq_class>(std::size_t, std::size_t)> mul;
};

/// M_2(Q) in the basis (I, E12, E21, E22).
inline UnitFirstAlgebra oracle_m2() {
  auto as_matrix = [](std::size_t i) {
    std::vector<mpq_class> m(4, 0);  // m11 m12 m21 m22
    if (i == 0) m[0] = m[3] = 1;
    if (i == 1) m[1] = 1;
    if (i == 2) m[2] = 1;
    if (i == 3) m[3] = 1;
    return m;
  };
  return {4, [as_matrix](std::size_t i, std::size_t j) {
            const auto a = as_matrix(i), b = as_matrix(j);
            const mpq_class p11 = a[0] * b[0] + a[1] * b[2], p12 = a[0] * b[1] + a[1] * b[3];
            const mpq_class p21 = a[2] * b[0] + a[3] * b[2], p22 = a[2] * b[1] + a[3] * b[3];
            return std::vector<mpq_class>{p11, p12, p21, p22 - p11};
          }};
}

/// Q[x]/x^m in the basis 1, x, ..., x^{m-1}.
inline UnitFirstAlgebra oracle_truncated(std::size_t m) {
  return {m, [m](std::size_t i, std::size_t j) {
            std::vector<mpq_class> v(m, 0);
            if (i + j < m) v[i + j] = 1;
            return v;
          }};
}

/// Dimensions of the normalized Hochschild complex: cochains on
/// (A / k1)^{(x) n} with values in A. Independent of the full bar complex used
/// by the library; returns HH^0..HH^top.
inline std::vector<std::size_t> normalized_hh_dims(const UnitFirstAlgebra& a, std::size_t top) {
  const std::size_t d = a.dim, r = d - 1;
  auto power = [](std::size_t b, std::size_t e) {
    std::size_t p = 1;
    while (e--) p *= b;
    return p;
  };
  auto decode = [](std::size_t code, std::size_t base, std::size_t len) {
    std::vector<std::size_t> idx(len);
    for (std::size_t k = len; k-- > 0;) {
      idx[k] = code % base + 1;  // non-unit basis vectors are 1..d-1
      code /= base;
    }
    return idx;
  };
  // Matrix of d^n: rows (J, o), columns (I, k).
  auto differential = [&](std::size_t n) {
    const std::size_t cols = power(r, n) * d, rows = power(r, n + 1) * d;
    Dense m(rows, std::vector<mpq_class>(cols, 0));
    for (std::size_t icode = 0; icode < power(r, n); ++icode) {
      const auto I = decode(icode, r, n);
      for (std::size_t k = 0; k < d; ++k) {
        const std::size_t col = icode * d + k;
        // phi(args) = e_k if args == I (all non-unit) else 0.
        auto phi = [&](const std::vector<std::size_t>& args) { return args == I; };
        for (std::size_t jcode = 0; jcode < power(r, n + 1); ++jcode) {
          const auto J = decode(jcode, r, n + 1);
          std::vector<mpq_class> value(d, 0);
          std::vector<std::size_t> tail(J.begin() + 1, J.end());
          if (phi(tail)) {
            const auto p = a.mul(J[0], k);
            for (std::size_t o = 0; o < d; ++o) value[o] += p[o];
          }
          for (std::size_t i = 0; i < n; ++i) {
            const auto p = a.mul(J[i], J[i + 1]);
            const int sign = (i + 1) % 2 ? -1 : 1;
            for (std::size_t c = 1; c < d; ++c) {
              if (p[c] == 0) continue;
              std::vector<std::size_t> merged(J.begin(), J.begin() + static_cast<long>(i));
              merged.push_back(c);
              merged.insert(merged.end(), J.begin() + static_cast<long>(i) + 2, J.end());
              if (phi(merged)) value[k] += sign * p[c];
            }
          }
          std::vector<std::size_t> head(J.begin(), J.end() - 1);
          if (phi(head)) {
            const auto p = a.mul(k, J[n]);
            const int sign = (n + 1) % 2 ? -1 : 1;
            for (std::size_t o = 0; o < d; ++o) value[o] += sign * p[o];
          }
          for (std::size_t o = 0; o < d; ++o) m[jcode * d + o][col] = value[o];
        }
      }
    }
    return m;
  };
  std::vector<std::size_t> ranks;
  for (std::size_t n = 0; n <= top; ++n) ranks.push_back(bareiss_rank(differential(n)));
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= top; ++n)
    out.push_back(power(r, n) * d - ranks[n] - (n ? ranks[n - 1] : 0));
  return out;
}

/// Center of the algebra, computed as the joint kernel of x -> e_i x - x e_i.
inline std::size_t center_dim(const UnitFirstAlgebra& a) {
  const std::size_t d = a.dim;
  Dense m;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t o = 0; o < d; ++o) {
      std::vector<mpq_class> row(d, 0);
      for (std::size_t x = 0; x < d; ++x) row[x] = a.mul(i, x)[o] - a.mul(x, i)[o];
      m.push_back(row);
    }
  return d - bareiss_rank(m);
}

}  // namespace deforma::testkit
