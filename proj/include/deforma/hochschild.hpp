#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "deforma/cochain_complex.hpp"
#include "deforma/combinatorics.hpp"
#include "deforma/error.hpp"
#include "deforma/matrix.hpp"

namespace deforma::hochschild {

using linalg::Matrix;
using linalg::Vector;

/// Finite-dimensional unital associative algebra given by its multiplication
/// table. Column i*d + j of the d x d^2 table holds the coordinates of e_i e_j.
class AssociativeAlgebra {
 public:
  AssociativeAlgebra() = default;
  AssociativeAlgebra(std::size_t dim, Matrix table, Vector unit, std::string name = "custom")
      : dim_(dim), table_(std::move(table)), unit_(std::move(unit)), name_(std::move(name)) {
    if (table_.rows() != dim_ || table_.cols() != dim_ * dim_)
      throw MalformedInput("multiplication table must be d x d^2");
    if (unit_.size() != dim_) throw MalformedInput("unit vector has wrong length");
  }

  /// The algebra spanned by a list of square matrices closed under products;
  /// the unit is located by solving for the identity matrix.
  static AssociativeAlgebra from_matrix_basis(const std::vector<Matrix>& basis, std::string name) {
    const std::size_t d = basis.size();
    const std::size_t n = d ? basis.front().rows() : 0;
    auto flat = [n](const Matrix& m) {
      Vector v(n * n);
      for (std::size_t r = 0; r < n; ++r)
        for (const auto& [c, x] : m.row(r)) v[r * n + c] = x;
      return v;
    };
    std::vector<Vector> cols;
    for (const auto& b : basis) cols.push_back(flat(b));
    const Matrix coords = Matrix::from_columns(cols, n * n);
    Matrix table(d, d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        auto sol = linalg::solve(coords, flat(basis[i] * basis[j]));
        if (!sol) throw InvariantViolation("matrix span is not closed under products");
        for (std::size_t k = 0; k < d; ++k) table.set(k, i * d + j, (*sol)[k]);
      }
    auto unit = linalg::solve(coords, flat(Matrix::identity(n)));
    if (!unit) throw InvariantViolation("matrix span does not contain the identity");
    return AssociativeAlgebra(d, std::move(table), std::move(*unit), std::move(name));
  }

  /// Q itself.
  static AssociativeAlgebra ground_field() {
    return AssociativeAlgebra(1, Matrix{{1}}, Vector{1}, "k");
  }

  /// Q[eps]/eps^2 with basis (1, eps).
  static AssociativeAlgebra dual_numbers() { return truncated_polynomial(2); }

  /// Q[x]/x^m with basis 1, x, ..., x^{m-1}.
  static AssociativeAlgebra truncated_polynomial(std::size_t m) {
    Matrix table(m, m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; a + b < m; ++b) table.set(a + b, a * m + b, Rational(1));
    Vector unit(m);
    unit[0] = 1;
    return AssociativeAlgebra(m, std::move(table), std::move(unit),
                              m == 2 ? "dual_numbers" : "k[x]/x^" + std::to_string(m));
  }

  /// Full matrix algebra M_n(Q) in the basis of matrix units E_ij (row-major).
  static AssociativeAlgebra matrix_algebra(std::size_t n) {
    std::vector<Matrix> basis;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Matrix e(n, n);
        e.set(i, j, Rational(1));
        basis.push_back(std::move(e));
      }
    return from_matrix_basis(basis, "m" + std::to_string(n));
  }

  /// Upper triangular 2x2 matrices (path algebra of the A2 quiver).
  static AssociativeAlgebra upper_triangular2() {
    Matrix e11(2, 2), e12(2, 2), e22(2, 2);
    e11.set(0, 0, Rational(1));
    e12.set(0, 1, Rational(1));
    e22.set(1, 1, Rational(1));
    return from_matrix_basis({e11, e12, e22}, "upper2");
  }

  std::size_t dim() const noexcept { return dim_; }
  const Matrix& table() const noexcept { return table_; }
  const Vector& unit() const noexcept { return unit_; }
  const std::string& name() const noexcept { return name_; }

  Rational structure(std::size_t i, std::size_t j, std::size_t k) const { return table_.at(k, i * dim_ + j); }

  Vector multiply(const Vector& a, const Vector& b) const {
    if (a.size() != dim_ || b.size() != dim_) throw DomainError("element length does not match algebra");
    Vector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (is_zero(a[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (is_zero(b[j])) continue;
        const Rational c = a[i] * b[j];
        for (std::size_t k = 0; k < dim_; ++k) {
          const Rational s = structure(i, j, k);
          if (!is_zero(s)) out[k] += c * s;
        }
      }
    }
    return out;
  }

  Vector basis_vector(std::size_t i) const {
    Vector v(dim_);
    v.at(i) = 1;
    return v;
  }

  /// The same algebra written in the basis given by the columns of P:
  /// new product x * y = P^{-1} ((P x)(P y)).
  AssociativeAlgebra change_basis(const Matrix& p) const {
    if (p.rows() != dim_ || p.cols() != dim_) throw DomainError("basis change has wrong shape");
    const Matrix inv = [&] {
      const auto e = linalg::rref(Matrix::hstack({p, Matrix::identity(dim_)}));
      if (e.pivots.size() < dim_ || e.pivots[dim_ - 1] != dim_ - 1)
        throw DomainError("basis change is singular");
      Matrix m(dim_, dim_);
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m.set(i, j, e.reduced.at(i, dim_ + j));
      return m;
    }();
    Matrix table(dim_, dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        const Vector prod = inv.apply(multiply(p.column(i), p.column(j)));
        for (std::size_t k = 0; k < dim_; ++k) table.set(k, i * dim_ + j, prod[k]);
      }
    return AssociativeAlgebra(dim_, std::move(table), inv.apply(unit_), name_);
  }

 private:
  std::size_t dim_ = 0;
  Matrix table_;
  Vector unit_;
  std::string name_ = "custom";
};

struct AlgebraCheck {
  bool ok = true;
  std::array<std::size_t, 3> triple{};
  std::string message;
};

/// (e_i e_j) e_k = e_i (e_j e_k) on all basis triples, then the unit laws.
inline AlgebraCheck check_algebra(const AssociativeAlgebra& a) {
  const std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const Vector x = a.basis_vector(i), y = a.basis_vector(j), z = a.basis_vector(k);
        if (a.multiply(a.multiply(x, y), z) != a.multiply(x, a.multiply(y, z)))
          return {false, {i, j, k},
                  "associativity fails on basis triple (" + std::to_string(i) + ", " + std::to_string(j) +
                      ", " + std::to_string(k) + ")"};
      }
  for (std::size_t i = 0; i < d; ++i) {
    const Vector x = a.basis_vector(i);
    if (a.multiply(a.unit(), x) != x || a.multiply(x, a.unit()) != x)
      return {false, {i, 0, 0}, "unit law fails on basis vector " + std::to_string(i)};
  }
  return {};
}

inline void require_algebra(const AssociativeAlgebra& a) {
  if (auto r = check_algebra(a); !r.ok) throw InvariantViolation(r.message);
}

/// A multilinear map A^{(x)n} -> A as a d x d^n matrix: column flatten(i_1..i_n)
/// holds the coordinates of phi(e_{i_1}, ..., e_{i_n}).
struct HochschildCochain {
  std::size_t arity = 0;
  Matrix values;

  static HochschildCochain zero(std::size_t d, std::size_t arity) {
    return {arity, Matrix(d, ipow(d, arity))};
  }

  /// Flat coordinates: index flatten(inputs) * d + output.
  Vector flat() const {
    const std::size_t d = values.rows();
    Vector v(values.cols() * d);
    for (std::size_t k = 0; k < d; ++k)
      for (const auto& [col, x] : values.row(k)) v[col * d + k] = x;
    return v;
  }

  static HochschildCochain from_flat(std::size_t d, std::size_t arity, const Vector& v) {
    HochschildCochain c = zero(d, arity);
    if (v.size() != c.values.cols() * d) throw DomainError("cochain vector has wrong length");
    for (std::size_t idx = 0; idx < v.size(); ++idx)
      if (!is_zero(v[idx])) c.values.set(idx % d, idx / d, v[idx]);
    return c;
  }

  /// phi(x_1, ..., x_n) for arbitrary (not only basis) arguments.
  Vector evaluate(const std::vector<Vector>& args) const {
    if (args.size() != arity) throw DomainError("wrong number of cochain arguments");
    const std::size_t d = values.rows();
    Vector out(d);
    const std::size_t total = values.cols();
    for (std::size_t col = 0; col < total; ++col) {
      const IndexList idx = unflatten(col, d, arity);
      Rational w = 1;
      for (std::size_t s = 0; s < arity && !is_zero(w); ++s) w *= args[s][idx[s]];
      if (is_zero(w)) continue;
      for (std::size_t k = 0; k < d; ++k) {
        const Rational v = values.at(k, col);
        if (!is_zero(v)) out[k] += w * v;
      }
    }
    return out;
  }
};

/// Hochschild differential C^n -> C^{n+1} in flat coordinates,
///
///   (d phi)(a_1, ..., a_{n+1}) = a_1 phi(a_2, ..., a_{n+1})
///        + sum_{i=1}^{n} (-1)^i phi(a_1, ..., a_i a_{i+1}, ..., a_{n+1})
///        + (-1)^{n+1} phi(a_1, ..., a_n) a_{n+1}.
///
/// Full (unnormalized) bar complex; associativity is not checked here.
inline Matrix hochschild_differential(const AssociativeAlgebra& a, std::size_t n) {
  const std::size_t d = a.dim();
  const std::size_t in_count = ipow(d, n), out_count = ipow(d, n + 1);
  Matrix m(out_count * d, in_count * d);
  // Nonzero products, per (i, j).
  std::vector<std::vector<std::pair<std::size_t, Rational>>> prod(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (const auto& [col, v] : a.table().row(k)) prod[col].emplace_back(k, v);
  const std::size_t tail = ipow(d, n);  // number of multi-indices of length n
  for (std::size_t jcode = 0; jcode < out_count; ++jcode) {
    const IndexList j = unflatten(jcode, d, n + 1);
    // a_1 phi(a_2..a_{n+1}): phi coordinate (k, rest) -> output e_{j1} e_k.
    const std::size_t rest = jcode % tail;
    for (std::size_t k = 0; k < d; ++k)
      for (const auto& [o, v] : prod[j[0] * d + k]) m.add(jcode * d + o, rest * d + k, v);
    // Contractions.
    for (std::size_t i = 0; i < n; ++i) {
      const Rational sign = (i + 1) % 2 ? -1 : 1;
      for (const auto& [c, v] : prod[j[i] * d + j[i + 1]]) {
        IndexList merged;
        merged.reserve(n);
        for (std::size_t s = 0; s < i; ++s) merged.push_back(j[s]);
        merged.push_back(c);
        for (std::size_t s = i + 2; s <= n; ++s) merged.push_back(j[s]);
        const std::size_t mcode = flatten(merged, d);
        for (std::size_t o = 0; o < d; ++o) m.add(jcode * d + o, mcode * d + o, sign * v);
      }
    }
    // (-1)^{n+1} phi(a_1..a_n) a_{n+1}.
    const Rational sign = (n + 1) % 2 ? -1 : 1;
    const std::size_t head = jcode / d;
    for (std::size_t k = 0; k < d; ++k)
      for (const auto& [o, v] : prod[k * d + j[n]]) m.add(jcode * d + o, head * d + k, sign * v);
  }
  return m;
}

/// Default arity cap: cochains up to C^4 (enough for HH^0..HH^3 at d <= 4).
inline constexpr std::size_t kDefaultArityCap = 4;

/// The bar complex in degrees 0..top. Cohomology is exact in degrees below
/// `top`; the top degree only serves as the target of d^{top-1}.
inline linalg::CochainComplex hochschild_complex(const AssociativeAlgebra& a, std::size_t top,
                                                 std::size_t arity_cap = kDefaultArityCap) {
  if (top > arity_cap)
    throw CapExceeded("Hochschild cochains of arity " + std::to_string(top) + " exceed the cap " +
                      std::to_string(arity_cap));
  require_algebra(a);
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (std::size_t n = 0; n <= top; ++n) {
    dims.push_back(ipow(a.dim(), n + 1));
    diffs.push_back(n < top ? hochschild_differential(a, n) : Matrix(0, dims.back()));
  }
  return linalg::CochainComplex(0, std::move(dims), std::move(diffs));
}

inline std::size_t hh_dim(const AssociativeAlgebra& a, std::size_t n, std::size_t arity_cap = kDefaultArityCap) {
  return hochschild_complex(a, n + 1, arity_cap).cohomology_dim(static_cast<int>(n));
}

/// Cocycle representatives of a basis of HH^2: the first-order deformations
/// e_i * e_j + hbar B(e_i, e_j) up to equivalence.
inline std::vector<HochschildCochain> first_order_deformations(const AssociativeAlgebra& a,
                                                               std::size_t arity_cap = kDefaultArityCap) {
  const auto reps = hochschild_complex(a, 3, arity_cap).cohomology_representatives(2);
  std::vector<HochschildCochain> out;
  for (const auto& col : reps.columns()) out.push_back(HochschildCochain::from_flat(a.dim(), 2, col));
  return out;
}

struct ObstructionReport {
  bool vanishes = false;
  std::size_t hh3 = 0;
  /// Human-readable consequence for extending first-order deformations.
  std::string statement;
};

/// HH^3 = 0 implies every first-order deformation extends to second order.
inline ObstructionReport obstruction_space_vanishes(const AssociativeAlgebra& a,
                                                    std::size_t arity_cap = kDefaultArityCap) {
  ObstructionReport r;
  r.hh3 = hh_dim(a, 3, arity_cap);
  r.vanishes = r.hh3 == 0;
  r.statement = r.vanishes ? "HH^3 = 0: every first-order deformation extends to second order"
                           : "HH^3 != 0: extension of first-order deformations is not guaranteed";
  return r;
}

/// Truncated star product f * g = fg + hbar B_1(f,g) + ... + hbar^{m-1} B_{m-1}(f,g)
/// modulo hbar^m.
struct StarProductData {
  int order = 1;
  std::vector<HochschildCochain> maps;  // B_1 .. B_{order-1}
};

struct StarCheck {
  bool ok = true;
  int failing_order = 0;
  std::array<std::size_t, 3> triple{};
  std::string message;
};

/// Checks (f*g)*h = f*(g*h) mod hbar^m on all basis triples, order by order.
/// At order 1 the condition is exactly the Hochschild 2-cocycle identity for
/// B_1 (the associator there equals -(d B_1)).
inline StarCheck star_associativity_check(const AssociativeAlgebra& a, const StarProductData& s) {
  const std::size_t d = a.dim();
  if (s.order < 1) throw DomainError("star product order must be >= 1");
  if (s.maps.size() != static_cast<std::size_t>(s.order - 1))
    throw MalformedInput("star product of order m needs m-1 bilinear maps");
  for (const auto& b : s.maps)
    if (b.arity != 2 || b.values.rows() != d || b.values.cols() != d * d)
      throw MalformedInput("star product maps must be 2-cochains on the algebra");
  auto component = [&](std::size_t i, const Vector& x, const Vector& y) {
    return i == 0 ? a.multiply(x, y) : s.maps[i - 1].evaluate({x, y});
  };
  for (int k = 1; k < s.order; ++k)
    for (std::size_t f = 0; f < d; ++f)
      for (std::size_t g = 0; g < d; ++g)
        for (std::size_t h = 0; h < d; ++h) {
          const Vector x = a.basis_vector(f), y = a.basis_vector(g), z = a.basis_vector(h);
          Vector assoc(d);
          for (int i = 0; i <= k; ++i) {
            const std::size_t ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(k - i);
            const Vector left = component(ii, component(jj, x, y), z);
            const Vector right = component(ii, x, component(jj, y, z));
            for (std::size_t o = 0; o < d; ++o) assoc[o] += left[o] - right[o];
          }
          for (const auto& v : assoc)
            if (!is_zero(v)) {
              StarCheck r{false, k, {f, g, h}, {}};
              r.message = (k == 1 ? std::string("Hochschild 2-cocycle identity for B_1 fails")
                                  : "associativity fails at order " + std::to_string(k)) +
                          " on basis triple (" + std::to_string(f) + ", " + std::to_string(g) + ", " +
                          std::to_string(h) + ")";
              return r;
            }
        }
  return {};
}

}  // namespace deforma::hochschild
