#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "deforma/error.hpp"
#include "deforma/matrix.hpp"

namespace deforma::linalg {

/// Finite cochain complex C^lo -> ... -> C^hi. Spaces outside the window are
/// zero. differential(i) maps C^i to C^{i+1}; the last one has zero rows.
class CochainComplex {
 public:
  /// `diffs[k]` is the differential out of degree lo + k, with shape
  /// dims[k+1] x dims[k] (0 x dims[k] for the top degree). Throws
  /// InvariantViolation unless every composite d_{i+1} d_i vanishes.
  CochainComplex(int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs)
      : lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)) {
    if (dims_.empty()) throw MalformedInput("cochain complex needs at least one degree");
    if (diffs_.size() != dims_.size())
      throw MalformedInput("one differential per degree is required");
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      const std::size_t target = k + 1 < dims_.size() ? dims_[k + 1] : 0;
      if (diffs_[k].cols() != dims_[k] || diffs_[k].rows() != target) {
        std::ostringstream msg;
        msg << "differential out of degree " << lo_ + static_cast<int>(k) << " has shape "
            << diffs_[k].rows() << "x" << diffs_[k].cols() << ", expected " << target << "x"
            << dims_[k];
        throw MalformedInput(msg.str());
      }
    }
    for (std::size_t k = 0; k + 1 < dims_.size(); ++k)
      if (!(diffs_[k + 1] * diffs_[k]).is_zero_matrix())
        throw InvariantViolation("d o d != 0 at degree " + std::to_string(lo_ + static_cast<int>(k)));
  }

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool in_window(int i) const noexcept { return i >= lo() && i <= hi(); }

  std::size_t dim(int i) const { return in_window(i) ? dims_[slot(i)] : 0; }

  const Matrix& differential(int i) const {
    require(i);
    return diffs_[slot(i)];
  }

  std::size_t rank_of_differential(int i) const {
    if (!in_window(i)) return 0;
    return rank(diffs_[slot(i)]);
  }

  /// dim ker d_i - rank d_{i-1}.
  std::size_t cohomology_dim(int i) const {
    require(i);
    return dim(i) - rank_of_differential(i) - rank_of_differential(i - 1);
  }

  /// Cocycles whose classes form a basis of H^i (returned as columns).
  Matrix cohomology_representatives(int i) const {
    require(i);
    const Matrix cycles = kernel_basis(diffs_[slot(i)]);
    const Matrix boundaries = in_window(i - 1) ? diffs_[slot(i - 1)] : Matrix(dim(i), 0);
    const Matrix both = Matrix::hstack({boundaries, cycles});
    std::vector<Vector> reps;
    for (auto c : independent_columns(both))
      if (c >= boundaries.cols()) reps.push_back(cycles.column(c - boundaries.cols()));
    return Matrix::from_columns(reps, dim(i));
  }

 private:
  std::size_t slot(int i) const { return static_cast<std::size_t>(i - lo_); }
  void require(int i) const {
    if (!in_window(i))
      throw DomainError("degree " + std::to_string(i) + " outside window [" +
                        std::to_string(lo()) + ", " + std::to_string(hi()) + "]");
  }

  int lo_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> diffs_;
};

/// Free function form of CochainComplex::cohomology_dim.
inline std::size_t cohomology_dim(const CochainComplex& c, int i) { return c.cohomology_dim(i); }

}  // namespace deforma::linalg
