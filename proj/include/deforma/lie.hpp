#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deforma/cochain_complex.hpp"
#include "deforma/combinatorics.hpp"
#include "deforma/error.hpp"
#include "deforma/matrix.hpp"

namespace deforma::lie {

using linalg::Matrix;
using linalg::Vector;

/// Finite-dimensional Lie algebra over Q given by structure constants
/// [e_i, e_j] = sum_k c^k_{ij} e_k.
///
/// The constants are stored as the adjoint matrices: ad(i) has entry (k, j)
/// equal to c^k_{ij}. Construction does not enforce the Lie axioms; use
/// check_antisymmetry / check_jacobi (the JSON and CLI layers do).
class LieAlgebra {
 public:
  LieAlgebra() = default;

  LieAlgebra(std::size_t dim, std::vector<Matrix> ad, std::string name = "custom")
      : dim_(dim), ad_(std::move(ad)), name_(std::move(name)) {
    if (ad_.size() != dim_) throw MalformedInput("one adjoint matrix per basis vector is required");
    for (const auto& m : ad_)
      if (m.rows() != dim_ || m.cols() != dim_) throw MalformedInput("adjoint matrix has wrong shape");
  }

  /// Brackets listed for i < j only; [e_j, e_i] is filled in by antisymmetry.
  struct Bracket {
    std::size_t i, j;
    std::vector<std::pair<std::size_t, Rational>> value;
  };

  static LieAlgebra from_brackets(std::size_t dim, const std::vector<Bracket>& brackets,
                                  std::string name = "custom") {
    std::vector<Matrix> ad(dim, Matrix(dim, dim));
    std::vector<std::vector<bool>> seen(dim, std::vector<bool>(dim, false));
    for (const auto& b : brackets) {
      if (b.i >= dim || b.j >= dim) throw MalformedInput("bracket index out of range");
      if (b.i >= b.j) throw MalformedInput("brackets must be listed with i < j");
      if (seen[b.i][b.j]) throw MalformedInput("bracket [e_i, e_j] listed twice");
      seen[b.i][b.j] = true;
      for (const auto& [k, v] : b.value) {
        if (k >= dim) throw MalformedInput("bracket value index out of range");
        ad[b.i].add(k, b.j, v);
        ad[b.j].add(k, b.i, -v);
      }
    }
    return LieAlgebra(dim, std::move(ad), std::move(name));
  }

  /// Structure constants of the Lie subalgebra of gl_n spanned by the given
  /// matrices (commutator bracket). Throws InvariantViolation if the span is
  /// not closed under commutators.
  static LieAlgebra from_matrix_basis(const std::vector<Matrix>& basis, std::string name) {
    const std::size_t d = basis.size();
    if (d == 0) return LieAlgebra(0, {}, std::move(name));
    const std::size_t n = basis.front().rows();
    std::vector<Vector> flat;
    for (const auto& b : basis) {
      Vector v(n * n);
      for (std::size_t r = 0; r < n; ++r)
        for (const auto& [c, x] : b.row(r)) v[r * n + c] = x;
      flat.push_back(std::move(v));
    }
    const Matrix coords = Matrix::from_columns(flat, n * n);
    std::vector<Matrix> ad(d, Matrix(d, d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const Matrix comm = basis[i] * basis[j] - basis[j] * basis[i];
        Vector v(n * n);
        for (std::size_t r = 0; r < n; ++r)
          for (const auto& [c, x] : comm.row(r)) v[r * n + c] = x;
        auto sol = linalg::solve(coords, v);
        if (!sol) throw InvariantViolation("matrix span is not closed under commutators");
        for (std::size_t k = 0; k < d; ++k) ad[i].set(k, j, (*sol)[k]);
      }
    return LieAlgebra(d, std::move(ad), std::move(name));
  }

  static LieAlgebra abelian(std::size_t dim) {
    return LieAlgebra(dim, std::vector<Matrix>(dim, Matrix(dim, dim)),
                      "abelian(" + std::to_string(dim) + ")");
  }

  /// sl2 in the basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
  static LieAlgebra sl2() {
    return from_matrix_basis({Matrix{{1, 0}, {0, -1}}, Matrix{{0, 1}, {0, 0}}, Matrix{{0, 0}, {1, 0}}},
                             "sl2");
  }

  /// sl3 in the Chevalley basis (h1, h2, e1, e2, e3, f1, f2, f3) with
  /// h1 = E11 - E22, h2 = E22 - E33, e1 = E12, e2 = E23, e3 = E13 and f_i the
  /// transposes of e_i.
  static LieAlgebra sl3() {
    auto unit = [](std::size_t r, std::size_t c) {
      Matrix m(3, 3);
      m.set(r, c, Rational(1));
      return m;
    };
    return from_matrix_basis({unit(0, 0) - unit(1, 1), unit(1, 1) - unit(2, 2), unit(0, 1), unit(1, 2),
                              unit(0, 2), unit(1, 0), unit(2, 1), unit(2, 0)},
                             "sl3");
  }

  /// Two-dimensional non-abelian algebra [x, y] = y (not unimodular).
  static LieAlgebra affine_line() {
    return from_brackets(2, {{0, 1, {{1, Rational(1)}}}}, "aff1");
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::string& name() const noexcept { return name_; }
  const Matrix& ad(std::size_t i) const { return ad_.at(i); }
  const std::vector<Matrix>& ad_matrices() const noexcept { return ad_; }

  Rational constant(std::size_t i, std::size_t j, std::size_t k) const { return ad_.at(i).at(k, j); }

  Vector bracket(const Vector& x, const Vector& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw DomainError("vector length does not match Lie algebra");
    Vector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (is_zero(x[i])) continue;
      const Vector col = ad_[i].apply(y);
      for (std::size_t k = 0; k < dim_; ++k) out[k] += x[i] * col[k];
    }
    return out;
  }

  Vector basis_vector(std::size_t i) const {
    Vector v(dim_);
    v.at(i) = 1;
    return v;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Matrix> ad_;
  std::string name_ = "custom";
};

/// Result of a structural check; `triple` names the first failing basis
/// triple (or pair, in the last slot unused) when ok is false.
struct CheckResult {
  bool ok = true;
  std::array<std::size_t, 3> triple{};
  std::string message;
};

inline CheckResult check_antisymmetry(const LieAlgebra& l) {
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i; j < l.dim(); ++j)
      for (std::size_t k = 0; k < l.dim(); ++k)
        if (l.constant(i, j, k) != -l.constant(j, i, k))
          return {false, {i, j, k}, "antisymmetry fails: c^" + std::to_string(k) + "_{" +
                                        std::to_string(i) + std::to_string(j) + "}"};
  return {};
}

/// Jacobi identity [x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0 on all basis
/// triples i < j < k (antisymmetric constants assumed).
inline CheckResult check_jacobi(const LieAlgebra& l) {
  const std::size_t d = l.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        const Vector x = l.basis_vector(i), y = l.basis_vector(j), z = l.basis_vector(k);
        const Vector a = l.bracket(x, l.bracket(y, z));
        const Vector b = l.bracket(y, l.bracket(z, x));
        const Vector c = l.bracket(z, l.bracket(x, y));
        for (std::size_t m = 0; m < d; ++m)
          if (!is_zero(a[m] + b[m] + c[m]))
            return {false, {i, j, k},
                    "Jacobi fails on basis triple (" + std::to_string(i) + ", " + std::to_string(j) +
                        ", " + std::to_string(k) + ")"};
      }
  return {};
}

/// Throws InvariantViolation unless l is a Lie algebra.
inline void require_lie(const LieAlgebra& l) {
  if (auto r = check_antisymmetry(l); !r.ok) throw InvariantViolation(r.message);
  if (auto r = check_jacobi(l); !r.ok) throw InvariantViolation(r.message);
}

/// A representation: one action matrix per basis vector of the algebra.
class Representation {
 public:
  Representation(LieAlgebra algebra, std::size_t dim, std::vector<Matrix> action,
                 std::vector<IndexList> basis_labels = {})
      : algebra_(std::move(algebra)),
        dim_(dim),
        action_(std::move(action)),
        labels_(std::move(basis_labels)) {
    if (action_.size() != algebra_.dim()) throw MalformedInput("one action matrix per Lie basis vector");
    for (const auto& m : action_)
      if (m.rows() != dim_ || m.cols() != dim_) throw MalformedInput("action matrix has wrong shape");
  }

  static Representation trivial(const LieAlgebra& l, std::size_t dim = 1) {
    return Representation(l, dim, std::vector<Matrix>(l.dim(), Matrix(dim, dim)));
  }

  static Representation adjoint(const LieAlgebra& l) {
    std::vector<IndexList> labels;
    for (std::size_t i = 0; i < l.dim(); ++i) labels.push_back({i});
    return Representation(l, l.dim(), l.ad_matrices(), std::move(labels));
  }

  const LieAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t dim() const noexcept { return dim_; }
  const Matrix& action(std::size_t i) const { return action_.at(i); }
  const std::vector<Matrix>& actions() const noexcept { return action_; }
  /// Index list (subset or multiset) labelling each basis vector, when the
  /// module was built as a tensor power.
  const std::vector<IndexList>& basis_labels() const noexcept { return labels_; }

 private:
  LieAlgebra algebra_;
  std::size_t dim_;
  std::vector<Matrix> action_;
  std::vector<IndexList> labels_;
};

/// rho([e_i, e_j]) = [rho(e_i), rho(e_j)] on all basis pairs.
inline CheckResult check_representation(const Representation& r) {
  const auto& l = r.algebra();
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j) {
      Matrix lhs(r.dim(), r.dim());
      for (std::size_t k = 0; k < l.dim(); ++k) {
        const Rational c = l.constant(i, j, k);
        if (!is_zero(c)) lhs = lhs + r.action(k).scaled(c);
      }
      const Matrix rhs = r.action(i) * r.action(j) - r.action(j) * r.action(i);
      if (!(lhs == rhs))
        return {false, {i, j, 0}, "representation fails on pair (" + std::to_string(i) + ", " +
                                      std::to_string(j) + ")"};
    }
  return {};
}

enum class PowerKind { Wedge, Sym };

/// Wedge or symmetric power of the adjoint representation, acting by
/// derivations. Basis: strictly increasing (wedge) or weakly increasing (sym)
/// index lists in lexicographic order.
inline Representation power_rep(const LieAlgebra& l, PowerKind kind, std::size_t k) {
  const std::size_t d = l.dim();
  if (kind == PowerKind::Wedge && k > d)
    throw DomainError("wedge power " + std::to_string(k) + " exceeds dimension " + std::to_string(d));
  const BasisIndex basis(kind == PowerKind::Wedge ? combinations(d, k) : multisets(d, k));
  std::vector<Matrix> action(d, Matrix(basis.size(), basis.size()));
  for (std::size_t x = 0; x < d; ++x) {
    const Matrix& ad = l.ad(x);
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const IndexList& word = basis[col];
      for (std::size_t s = 0; s < word.size(); ++s) {
        // Replace factor s by each term of [e_x, e_{word[s]}].
        for (std::size_t m = 0; m < d; ++m) {
          const Rational c = ad.at(m, word[s]);
          if (is_zero(c)) continue;
          IndexList w = word;
          w[s] = m;
          int sign = 1;
          if (kind == PowerKind::Wedge) {
            bool repeated = false;
            for (std::size_t t = 0; t < w.size(); ++t)
              if (t != s && w[t] == m) repeated = true;
            if (repeated) continue;
            // Bubble position s into sorted order, counting transpositions.
            std::size_t p = s;
            while (p > 0 && w[p - 1] > w[p]) {
              std::swap(w[p - 1], w[p]);
              --p;
              sign = -sign;
            }
            while (p + 1 < w.size() && w[p + 1] < w[p]) {
              std::swap(w[p + 1], w[p]);
              ++p;
              sign = -sign;
            }
          } else {
            std::sort(w.begin(), w.end());
          }
          action[x].add(basis.position(w), col, c * sign);
        }
      }
    }
  }
  return Representation(l, basis.size(), std::move(action), basis.elements());
}

/// Basis (as columns) of the joint kernel of all action matrices: the
/// infinitesimal invariants, which agree with G-invariants for connected G.
inline Matrix invariant_basis(const Representation& r) {
  if (r.algebra().dim() == 0) return Matrix::identity(r.dim());
  return linalg::kernel_basis(Matrix::vstack(r.actions()));
}

inline std::size_t invariant_dim(const Representation& r) {
  if (r.algebra().dim() == 0) return r.dim();
  return r.dim() - linalg::rank(Matrix::vstack(r.actions()));
}

/// Chevalley-Eilenberg cochain complex with trivial coefficients, built on
/// the dual wedge basis e^J (J increasing, lexicographic) in degrees 0..d:
///
///   (d w)(x_0, ..., x_i) = sum_{s<t} (-1)^{s+t} w([x_s, x_t], x_0, ..^s..^t.., x_i).
///
/// On generators this reads d e^k = - sum_{i<j} c^k_{ij} e^i ^ e^j.
inline linalg::CochainComplex ce_complex(const LieAlgebra& l) {
  const std::size_t d = l.dim();
  std::vector<BasisIndex> bases;
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i <= d; ++i) {
    bases.emplace_back(combinations(d, i));
    dims.push_back(bases.back().size());
  }
  std::vector<Matrix> diffs;
  for (std::size_t i = 0; i <= d; ++i) {
    if (i == d) {
      diffs.emplace_back(0, dims[i]);
      continue;
    }
    Matrix m(dims[i + 1], dims[i]);
    for (std::size_t row = 0; row < dims[i + 1]; ++row) {
      const IndexList& K = bases[i + 1][row];
      for (std::size_t s = 0; s < K.size(); ++s)
        for (std::size_t t = s + 1; t < K.size(); ++t) {
          IndexList rest;
          for (std::size_t u = 0; u < K.size(); ++u)
            if (u != s && u != t) rest.push_back(K[u]);
          const Matrix& ad = l.ad(K[s]);
          for (std::size_t target = 0; target < d; ++target) {
            const Rational c = ad.at(target, K[t]);
            if (is_zero(c)) continue;
            if (std::find(rest.begin(), rest.end(), target) != rest.end()) continue;
            // e^J(e_target, rest) with J = sorted({target} u rest).
            std::size_t below = 0;
            for (auto r : rest)
              if (r < target) ++below;
            IndexList J = rest;
            J.insert(J.begin() + static_cast<std::ptrdiff_t>(below), target);
            const int sign = ((s + t + below) % 2) ? -1 : 1;
            m.add(row, bases[i].position(J), c * sign);
          }
        }
    }
    diffs.push_back(std::move(m));
  }
  return linalg::CochainComplex(0, std::move(dims), std::move(diffs));
}

inline std::size_t ce_cohomology(const LieAlgebra& l, int degree) {
  if (degree < 0 || static_cast<std::size_t>(degree) > l.dim())
    throw DomainError("CE degree " + std::to_string(degree) + " outside [0, " + std::to_string(l.dim()) + "]");
  return ce_complex(l).cohomology_dim(degree);
}

}  // namespace deforma::lie
