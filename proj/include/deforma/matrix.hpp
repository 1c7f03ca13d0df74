#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "deforma/error.hpp"
#include "deforma/rational.hpp"

namespace deforma::linalg {

using Vector = std::vector<Rational>;

/// One row of a sparse matrix: (column, value) pairs, strictly increasing in
/// column, never holding an explicit zero.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// row <- row + factor * other, keeping the row canonical.
inline void axpy(SparseRow& row, const Rational& factor, const SparseRow& other) {
  if (is_zero(factor) || other.empty()) return;
  SparseRow out;
  out.reserve(row.size() + other.size());
  auto a = row.begin();
  auto b = other.begin();
  while (a != row.end() || b != other.end()) {
    if (b == other.end() || (a != row.end() && a->first < b->first)) {
      out.push_back(std::move(*a));
      ++a;
    } else if (a == row.end() || b->first < a->first) {
      out.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      Rational v = a->second + factor * b->second;
      if (!is_zero(v)) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  row = std::move(out);
}

/// Dense-semantics rational matrix with row-sparse storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

  Matrix(std::initializer_list<std::initializer_list<Rational>> init)
      : cols_(init.size() ? init.begin()->size() : 0) {
    for (const auto& r : init) {
      if (r.size() != cols_) throw MalformedInput("ragged matrix literal");
      SparseRow row;
      std::size_t j = 0;
      for (const auto& v : r) {
        if (!is_zero(v)) row.emplace_back(j, v);
        ++j;
      }
      data_.push_back(std::move(row));
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
    return m;
  }

  static Matrix from_dense(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw MalformedInput("ragged dense matrix");
      for (std::size_t j = 0; j < cols; ++j)
        if (!is_zero(rows[i][j])) m.data_[i].emplace_back(j, rows[i][j]);
    }
    return m;
  }

  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw MalformedInput("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i)
        if (!is_zero(columns[j][i])) m.data_[i].emplace_back(j, columns[j][i]);
    }
    return m;
  }

  std::size_t rows() const noexcept { return data_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  const SparseRow& row(std::size_t i) const { return data_.at(i); }

  /// Replaces row i; the row must be canonical (sorted, no zeros, in range).
  void set_row(std::size_t i, SparseRow row) { data_.at(i) = std::move(row); }

  Rational at(std::size_t i, std::size_t j) const {
    const auto& r = data_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) return it->second;
    return Rational(0);
  }

  void set(std::size_t i, std::size_t j, const Rational& v) {
    check_index(i, j);
    auto& r = data_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) {
      if (is_zero(v))
        r.erase(it);
      else
        it->second = v;
    } else if (!is_zero(v)) {
      r.emplace(it, j, v);
    }
  }

  void add(std::size_t i, std::size_t j, const Rational& v) {
    if (is_zero(v)) return;
    set(i, j, at(i, j) + v);
  }

  Vector column(std::size_t j) const {
    Vector out(rows());
    for (std::size_t i = 0; i < rows(); ++i) out[i] = at(i, j);
    return out;
  }

  std::vector<Vector> columns() const {
    std::vector<Vector> out(cols_, Vector(rows()));
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : data_[i]) out[j][i] = v;
    return out;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  bool is_zero_matrix() const {
    return std::all_of(data_.begin(), data_.end(), [](const auto& r) { return r.empty(); });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : data_[i]) t.data_[j].emplace_back(i, v);
    return t;
  }

  Vector apply(const Vector& x) const {
    if (x.size() != cols_) throw DomainError("vector length does not match matrix columns");
    Vector y(rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : data_[i]) y[i] += v * x[j];
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows())
      throw DomainError("matrix product shape mismatch");
    Matrix c(a.rows(), b.cols_);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (const auto& [k, v] : a.data_[i]) axpy(c.data_[i], v, b.data_[k]);
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) axpy(c.data_[i], Rational(1), b.data_[i]);
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) axpy(c.data_[i], Rational(-1), b.data_[i]);
    return c;
  }

  Matrix scaled(const Rational& s) const {
    if (is_zero(s)) return Matrix(rows(), cols_);
    Matrix c = *this;
    for (auto& r : c.data_)
      for (auto& e : r) e.second *= s;
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Rows of each block, in order.
  static Matrix vstack(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) return Matrix();
    Matrix out(0, blocks.front().cols_);
    for (const auto& b : blocks) {
      if (b.cols_ != out.cols_) throw DomainError("vstack column mismatch");
      out.data_.insert(out.data_.end(), b.data_.begin(), b.data_.end());
    }
    return out;
  }

  static Matrix hstack(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) return Matrix();
    Matrix out(blocks.front().rows(), 0);
    for (const auto& b : blocks) {
      if (b.rows() != out.rows()) throw DomainError("hstack row mismatch");
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (const auto& [j, v] : b.data_[i]) out.data_[i].emplace_back(out.cols_ + j, v);
      out.cols_ += b.cols_;
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m.at(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= rows() || j >= cols_) throw DomainError("matrix index out of range");
  }
  void check_same_shape(const Matrix& b) const {
    if (rows() != b.rows() || cols_ != b.cols_) throw DomainError("matrix shape mismatch");
  }

  std::size_t cols_ = 0;
  std::vector<SparseRow> data_;
};

namespace detail {

// Forward elimination over sparse rows. Rows are bucketed by leading column
// and each column's pivot is the shortest candidate row, which keeps fill-in
// low on the permutation-like systems built by the cochain constructions.
// Returns the pivot rows (normalized to leading coefficient 1) in increasing
// pivot-column order.
inline std::vector<SparseRow> echelon_rows(const Matrix& m) {
  std::vector<std::vector<SparseRow>> bucket(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto& r = m.row(i);
    if (!r.empty()) bucket[r.front().first].push_back(r);
  }
  std::vector<SparseRow> pivots;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto& cand = bucket[c];
    if (cand.empty()) continue;
    auto best = std::min_element(cand.begin(), cand.end(),
                                 [](const auto& a, const auto& b) { return a.size() < b.size(); });
    SparseRow pivot = std::move(*best);
    if (best != cand.end() - 1) *best = std::move(cand.back());
    cand.pop_back();
    const Rational inv = 1 / pivot.front().second;
    for (auto& e : pivot) e.second *= inv;
    for (auto& r : cand) {
      const Rational f = -r.front().second;
      axpy(r, f, pivot);
      if (!r.empty()) bucket[r.front().first].push_back(std::move(r));
    }
    cand.clear();
    cand.shrink_to_fit();
    pivots.push_back(std::move(pivot));
  }
  return pivots;
}

}  // namespace detail

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

inline Echelon rref(const Matrix& m) {
  auto rows = detail::echelon_rows(m);
  // Back substitution, last pivot first.
  for (std::size_t p = rows.size(); p-- > 0;) {
    const std::size_t col = rows[p].front().first;
    for (std::size_t q = 0; q < p; ++q) {
      const auto& r = rows[q];
      auto it = std::lower_bound(r.begin(), r.end(), col,
                                 [](const auto& e, std::size_t c) { return e.first < c; });
      if (it != r.end() && it->first == col) {
        const Rational f = -it->second;
        axpy(rows[q], f, rows[p]);
      }
    }
  }
  Echelon out{Matrix(m.rows(), m.cols()), {}};
  for (std::size_t p = 0; p < rows.size(); ++p) {
    out.pivots.push_back(rows[p].front().first);
    out.reduced.set_row(p, std::move(rows[p]));
  }
  return out;
}

inline std::size_t rank(const Matrix& m) {
  // Eliminating along the shorter side is cheaper.
  if (m.rows() > m.cols() * 2) return detail::echelon_rows(m.transpose()).size();
  return detail::echelon_rows(m).size();
}

/// Columns spanning ker M, one per free column of rref(M). The basis vector
/// attached to free column f has a 1 in coordinate f and 0 in every other
/// free coordinate, so coordinates of a kernel vector in this basis are its
/// entries at the free columns.
inline Matrix kernel_basis(const Matrix& m) {
  const Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  std::vector<std::size_t> slot(m.cols(), 0);
  for (std::size_t k = 0; k < free_cols.size(); ++k) slot[free_cols[k]] = k;
  Matrix basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) basis.set(free_cols[k], k, Rational(1));
  for (std::size_t p = 0; p < e.pivots.size(); ++p)
    for (const auto& [j, v] : e.reduced.row(p))
      if (!is_pivot[j]) basis.set(e.pivots[p], slot[j], -v);
  return basis;
}

/// Free columns of rref(M); matches the coordinate slots of kernel_basis(M).
inline std::vector<std::size_t> kernel_coordinates(const Matrix& m) {
  const Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) out.push_back(j);
  return out;
}

/// Indices of a maximal linearly independent subset of the columns, chosen
/// greedily from the left.
inline std::vector<std::size_t> independent_columns(const Matrix& m) { return rref(m).pivots; }

/// Some x with M x = b, or nothing when b is outside the column space.
inline std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw DomainError("right-hand side length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseRow r = m.row(i);
    if (!is_zero(b[i])) r.emplace_back(m.cols(), b[i]);
    aug.set_row(i, std::move(r));
  }
  const Echelon e = rref(aug);
  Vector x(m.cols());
  for (std::size_t p = 0; p < e.pivots.size(); ++p) {
    if (e.pivots[p] == m.cols()) return std::nullopt;
    x[e.pivots[p]] = e.reduced.at(p, m.cols());
  }
  return x;
}

/// Rows spanning the annihilator of the column space: functionals f with
/// f M = 0. A vector v lies in im M iff every such functional kills it.
inline Matrix cokernel_functionals(const Matrix& m) { return kernel_basis(m.transpose()).transpose(); }

}  // namespace deforma::linalg
