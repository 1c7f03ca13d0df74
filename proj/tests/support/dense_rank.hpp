#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

namespace deforma::testkit {

/// Dense integer-or-rational matrix for oracle computations; kept separate
/// from the library's sparse elimination on purpose.
using Dense = std::vector<std::vector<mpq_class>>;

/// Rank by fraction-free Bareiss elimination after clearing denominators
/// row by row.
inline std::size_t bareiss_rank(const Dense& input) {
  if (input.empty()) return 0;
  const std::size_t rows = input.size(), cols = input.front().size();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class lcm = 1;
    for (const auto& x : input[i]) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = input[i][j].get_num() * (lcm / input[i][j].get_den());
  }
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

}  // namespace deforma::testkit
