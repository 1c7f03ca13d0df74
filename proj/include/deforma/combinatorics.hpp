#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace deforma {

using IndexList = std::vector<std::size_t>;

/// Strictly increasing k-subsets of {0..n-1} in lexicographic order.
inline std::vector<IndexList> combinations(std::size_t n, std::size_t k) {
  std::vector<IndexList> out;
  if (k > n) return out;
  IndexList cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// Weakly increasing length-k sequences over {0..n-1} (multisets) in
/// lexicographic order.
inline std::vector<IndexList> multisets(std::size_t n, std::size_t k) {
  std::vector<IndexList> out;
  if (n == 0) {
    if (k == 0) out.emplace_back();
    return out;
  }
  IndexList cur(k, 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[i - 1];
  }
  return out;
}

/// Position lookup for an ordered basis of index lists.
class BasisIndex {
 public:
  BasisIndex() = default;
  explicit BasisIndex(std::vector<IndexList> basis) : basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) pos_.emplace(basis_[i], i);
  }
  std::size_t size() const noexcept { return basis_.size(); }
  const IndexList& operator[](std::size_t i) const { return basis_[i]; }
  const std::vector<IndexList>& elements() const noexcept { return basis_; }
  std::size_t position(const IndexList& key) const { return pos_.at(key); }
  bool contains(const IndexList& key) const { return pos_.count(key) != 0; }

 private:
  std::vector<IndexList> basis_;
  std::map<IndexList, std::size_t> pos_;
};

/// Mixed-radix flattening of multi-indices (i_1, ..., i_n) with i_k < base,
/// most significant slot first.
inline std::size_t flatten(const IndexList& idx, std::size_t base) {
  std::size_t out = 0;
  for (auto i : idx) out = out * base + i;
  return out;
}

inline IndexList unflatten(std::size_t code, std::size_t base, std::size_t length) {
  IndexList idx(length);
  for (std::size_t k = length; k-- > 0;) {
    idx[k] = code % base;
    code /= base;
  }
  return idx;
}

inline std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace deforma
