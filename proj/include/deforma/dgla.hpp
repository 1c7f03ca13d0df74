#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "deforma/error.hpp"
#include "deforma/lie.hpp"
#include "deforma/matrix.hpp"

namespace deforma::mc {

using linalg::Matrix;
using linalg::Vector;

/// Finite-dimensional differential graded Lie algebra g^lo ... g^hi.
///
/// differential(i) maps g^i to g^{i+1} (zero rows at the top degree). The
/// bracket g^i x g^j -> g^{i+j} is stored per degree pair as a matrix of
/// shape dim(i+j) x (dim(i) * dim(j)); column a * dim(j) + b is [x_a, y_b].
/// Brackets landing outside the window are zero.
class DGLA {
 public:
  DGLA() = default;
  DGLA(int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs, std::string name = "custom")
      : lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)), name_(std::move(name)) {
    if (dims_.empty()) throw MalformedInput("dgLa needs at least one degree");
    if (diffs_.empty()) {
      for (std::size_t k = 0; k < dims_.size(); ++k)
        diffs_.emplace_back(k + 1 < dims_.size() ? dims_[k + 1] : 0, dims_[k]);
    }
    if (diffs_.size() != dims_.size()) throw MalformedInput("one differential per degree is required");
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      const std::size_t target = k + 1 < dims_.size() ? dims_[k + 1] : 0;
      if (diffs_[k].rows() != target || diffs_[k].cols() != dims_[k])
        throw MalformedInput("differential out of degree " + std::to_string(lo_ + static_cast<int>(k)) +
                             " has the wrong shape");
    }
  }

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool in_window(int i) const noexcept { return i >= lo() && i <= hi(); }
  std::size_t dim(int i) const { return in_window(i) ? dims_[static_cast<std::size_t>(i - lo_)] : 0; }
  const std::string& name() const noexcept { return name_; }

  /// d on g^i; the zero map outside the window.
  Matrix differential(int i) const {
    if (!in_window(i)) return Matrix(dim(i + 1), dim(i));
    return diffs_[static_cast<std::size_t>(i - lo_)];
  }

  Vector d(int i, const Vector& x) const { return differential(i).apply(x); }

  /// Sets [x_a, y_b] for x_a in g^i, y_b in g^j, and fills in the graded
  /// antisymmetric partner [y_b, x_a] = -(-1)^{ij} [x_a, y_b].
  void set_bracket(int i, std::size_t a, int j, std::size_t b, const Vector& value) {
    if (!in_window(i) || !in_window(j) || a >= dim(i) || b >= dim(j))
      throw MalformedInput("bracket index outside the dgLa");
    if (!in_window(i + j)) {
      for (const auto& v : value)
        if (!is_zero(v)) throw MalformedInput("bracket lands outside the degree window");
      return;
    }
    if (value.size() != dim(i + j)) throw MalformedInput("bracket value has wrong length");
    write(i, a, j, b, value);
    Vector partner = value;
    if ((i * j) % 2 == 0)
      for (auto& v : partner) v = -v;
    write(j, b, i, a, partner);
  }

  /// [x_a, y_b] on basis elements; zero vector of g^{i+j} (possibly empty).
  Vector bracket_basis(int i, std::size_t a, int j, std::size_t b) const {
    Vector out(dim(i + j));
    auto it = brackets_.find({i, j});
    if (it == brackets_.end()) return out;
    const std::size_t col = a * dim(j) + b;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = it->second.at(k, col);
    return out;
  }

  /// Bracket of homogeneous elements. Throws DomainError when a nonzero
  /// result would land outside the window.
  Vector bracket(int i, const Vector& x, int j, const Vector& y) const {
    if (x.size() != dim(i) || y.size() != dim(j)) throw DomainError("element length does not match degree");
    auto it = brackets_.find({i, j});
    if (!in_window(i + j)) {
      if (it != brackets_.end()) throw DomainError("bracket lands outside the degree window");
      return {};
    }
    Vector out(dim(i + j));
    if (it == brackets_.end()) return out;
    const Matrix& m = it->second;
    for (std::size_t k = 0; k < out.size(); ++k)
      for (const auto& [col, v] : m.row(k)) {
        const std::size_t a = col / dim(j), b = col % dim(j);
        if (!is_zero(x[a]) && !is_zero(y[b])) out[k] += v * x[a] * y[b];
      }
    return out;
  }

  const std::map<std::pair<int, int>, Matrix>& bracket_tables() const noexcept { return brackets_; }

  bool bracket_is_zero() const {
    for (const auto& [key, m] : brackets_)
      if (!m.is_zero_matrix()) return false;
    return true;
  }

  Vector basis_vector(int i, std::size_t a) const {
    Vector v(dim(i));
    v.at(a) = 1;
    return v;
  }

  // Built-in examples.

  /// Zero bracket, zero differential.
  static DGLA abelian(int lo, std::vector<std::size_t> dims) {
    return DGLA(lo, std::move(dims), {}, "abelian");
  }

  /// g^1 = span{e}, g^2 = span{f}, [e, e] = f, d = 0.
  static DGLA toy_square() {
    DGLA g(0, {0, 1, 1}, {}, "toy");
    g.set_bracket(1, 0, 1, 0, Vector{1});
    return g;
  }

  /// sl2 (x) k[eps] with |eps| = 1: g^0 = sl2, g^1 = sl2 * eps, d = 0.
  static DGLA sl2_dual() {
    const auto l = lie::LieAlgebra::sl2();
    DGLA g(0, {3, 3, 0}, {}, "sl2_eps");
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        const Vector v = l.bracket(l.basis_vector(a), l.basis_vector(b));
        if (a < b) g.set_bracket(0, a, 0, b, v);
        g.set_bracket(0, a, 1, b, v);
      }
    return g;
  }

  /// g^0 = {u}, g^1 = {a, b}, g^2 = {c}; du = a, [u, b] = a, [b, b] = c.
  static DGLA nilpotent_toy() {
    DGLA g(0, {1, 2, 1}, {Matrix{{1}, {0}}, Matrix(1, 2), Matrix(0, 1)}, "nilpotent");
    g.set_bracket(0, 0, 1, 1, Vector{1, 0});
    g.set_bracket(1, 1, 1, 1, Vector{1});
    return g;
  }

 private:
  void write(int i, std::size_t a, int j, std::size_t b, const Vector& value) {
    auto [it, inserted] = brackets_.try_emplace({i, j}, dim(i + j), dim(i) * dim(j));
    (void)inserted;
    const std::size_t col = a * dim(j) + b;
    for (std::size_t k = 0; k < value.size(); ++k) it->second.set(k, col, value[k]);
  }

  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> diffs_;
  std::map<std::pair<int, int>, Matrix> brackets_;
  std::string name_ = "custom";
};

struct DGLACheck {
  bool ok = true;
  std::string message;
};

/// d^2 = 0, graded antisymmetry, graded Jacobi and the graded Leibniz rule,
/// all on basis elements.
inline DGLACheck check_dgla(const DGLA& g) {
  auto sign = [](int p) { return p % 2 ? Rational(-1) : Rational(1); };
  auto fail = [](std::string m) { return DGLACheck{false, std::move(m)}; };
  auto label = [](int i, std::size_t a) { return "(" + std::to_string(i) + "," + std::to_string(a) + ")"; };
  for (int i = g.lo(); i < g.hi(); ++i)
    if (!(g.differential(i + 1) * g.differential(i)).is_zero_matrix())
      return fail("d o d != 0 on degree " + std::to_string(i));
  auto scaled = [](Vector v, const Rational& s) {
    for (auto& x : v) x *= s;
    return v;
  };
  for (int i = g.lo(); i <= g.hi(); ++i)
    for (int j = g.lo(); j <= g.hi(); ++j)
      for (std::size_t a = 0; a < g.dim(i); ++a)
        for (std::size_t b = 0; b < g.dim(j); ++b) {
          const Vector xy = g.bracket_basis(i, a, j, b);
          if (xy != scaled(g.bracket_basis(j, b, i, a), -sign(i * j)))
            return fail("graded antisymmetry fails on " + label(i, a) + ", " + label(j, b));
          // d[x, y] = [dx, y] + (-1)^i [x, dy]
          if (g.in_window(i + j)) {
            const Vector x = g.basis_vector(i, a), y = g.basis_vector(j, b);
            Vector lhs = g.d(i + j, xy);
            Vector r1 = g.in_window(i + 1 + j) ? g.bracket(i + 1, g.d(i, x), j, y) : Vector(g.dim(i + j + 1));
            Vector r2 = g.in_window(i + j + 1) ? g.bracket(i, x, j + 1, g.d(j, y)) : Vector(g.dim(i + j + 1));
            if (lhs.empty()) lhs.assign(g.dim(i + j + 1), Rational(0));
            if (r1.empty()) r1.assign(lhs.size(), Rational(0));
            if (r2.empty()) r2.assign(lhs.size(), Rational(0));
            for (std::size_t k = 0; k < lhs.size(); ++k) lhs[k] -= r1[k] + sign(i) * r2[k];
            for (const auto& v : lhs)
              if (!is_zero(v)) return fail("graded Leibniz rule fails on " + label(i, a) + ", " + label(j, b));
          }
        }
  // [x, [y, z]] = [[x, y], z] + (-1)^{|x||y|} [y, [x, z]]
  for (int i = g.lo(); i <= g.hi(); ++i)
    for (int j = g.lo(); j <= g.hi(); ++j)
      for (int k = g.lo(); k <= g.hi(); ++k) {
        if (!g.in_window(i + j + k)) continue;
        for (std::size_t a = 0; a < g.dim(i); ++a)
          for (std::size_t b = 0; b < g.dim(j); ++b)
            for (std::size_t c = 0; c < g.dim(k); ++c) {
              const Vector x = g.basis_vector(i, a), y = g.basis_vector(j, b), z = g.basis_vector(k, c);
              auto br = [&](int p, const Vector& u, int q, const Vector& v) {
                return g.in_window(p) && g.in_window(q) && g.in_window(p + q) ? g.bracket(p, u, q, v)
                                                                              : Vector(g.dim(p + q));
              };
              Vector lhs = br(i, x, j + k, br(j, y, k, z));
              const Vector t1 = br(i + j, br(i, x, j, y), k, z);
              const Vector t2 = br(j, y, i + k, br(i, x, k, z));
              for (std::size_t o = 0; o < lhs.size(); ++o) lhs[o] -= t1[o] + sign(i * j) * t2[o];
              for (const auto& v : lhs)
                if (!is_zero(v))
                  return fail("graded Jacobi fails on " + label(i, a) + ", " + label(j, b) + ", " + label(k, c));
            }
      }
  return {};
}

inline void require_dgla(const DGLA& g) {
  if (auto r = check_dgla(g); !r.ok) throw InvariantViolation(r.message);
}

}  // namespace deforma::mc
