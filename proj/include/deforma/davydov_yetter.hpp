#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "deforma/cochain_complex.hpp"
#include "deforma/hopf.hpp"
#include "deforma/lie.hpp"

namespace deforma::dy {

using hopf::HopfAlgebra;
using hopf::Tensor;
using linalg::Matrix;
using linalg::Vector;

/// Default bound on d^n, the dimension of the ambient H^{(x) n}.
inline constexpr std::size_t kDefaultCap = 4096;

/// DY^n modeled as the centralizer of Delta^{(n)}(H) in H^{(x) n}: the
/// endomorphisms of the n-fold tensor functor on H-modules.
struct DYCochainSpace {
  std::size_t arity = 0;
  /// Columns form a basis of the centralizer inside H^{(x) n}.
  Matrix basis;
  /// Basis column k is the unique basis vector with entry 1 at ambient
  /// position coordinate_slots[k] and 0 at the other slots.
  std::vector<std::size_t> coordinate_slots;

  std::size_t dim() const { return basis.cols(); }

  /// Coordinates of an element of the centralizer; throws InvariantViolation
  /// if the element is not in it.
  Vector coordinates(const Tensor& x) const {
    Vector c(coordinate_slots.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = x.at(coordinate_slots[k]);
    if (basis.apply(c) != x) throw InvariantViolation("element leaves the centralizer model");
    return c;
  }
};

inline void check_cap(const HopfAlgebra& h, std::size_t n, std::size_t cap) {
  const std::size_t size = ipow(h.dim(), n);
  if (size > cap)
    throw CapExceeded("H^(x)" + std::to_string(n) + " has dimension " + std::to_string(size) + " above the cap " +
                      std::to_string(cap));
}

inline DYCochainSpace dy_cochain_space(const HopfAlgebra& h, std::size_t n, std::size_t cap = kDefaultCap) {
  check_cap(h, n, cap);
  const std::size_t d = h.dim(), total = ipow(d, n);
  Matrix system(h.generators().size() * total, total);
  for (std::size_t gi = 0; gi < h.generators().size(); ++gi) {
    const Tensor x = hopf::iterated_coproduct(h, n, h.algebra().basis_vector(h.generators()[gi]));
    for (std::size_t j = 0; j < total; ++j) {
      Tensor e(total);
      e[j] = 1;
      const Tensor l = hopf::tensor_multiply(h, n, x, e), r = hopf::tensor_multiply(h, n, e, x);
      for (std::size_t k = 0; k < total; ++k)
        if (l[k] != r[k]) system.add(gi * total + k, j, l[k] - r[k]);
    }
  }
  DYCochainSpace s;
  s.arity = n;
  s.basis = linalg::kernel_basis(system);
  s.coordinate_slots = linalg::kernel_coordinates(system);
  return s;
}

/// d f = 1 (x) f - Delta_1 f + Delta_2 f - ... + (-1)^n Delta_n f + (-1)^{n+1} f (x) 1,
/// where Delta_i applies the coproduct to tensor slot i. Written in the
/// bases of DY^n and DY^{n+1}.
inline Matrix dy_differential(const HopfAlgebra& h, const DYCochainSpace& from, const DYCochainSpace& to) {
  const std::size_t n = from.arity;
  if (to.arity != n + 1) throw DomainError("target cochain space must have arity n + 1");
  const Vector& unit = h.algebra().unit();
  Matrix m(to.dim(), from.dim());
  for (std::size_t c = 0; c < from.dim(); ++c) {
    const Tensor f = from.basis.column(c);
    Tensor df = hopf::tensor_product(unit, f);
    for (std::size_t i = 1; i <= n; ++i) {
      const Tensor t = hopf::coproduct_at(h, n, f, i - 1);
      const Rational sign = i % 2 ? -1 : 1;
      for (std::size_t k = 0; k < df.size(); ++k) df[k] += sign * t[k];
    }
    const Tensor last = hopf::tensor_product(f, unit);
    const Rational sign = (n + 1) % 2 ? -1 : 1;
    for (std::size_t k = 0; k < df.size(); ++k) df[k] += sign * last[k];
    const Vector coords = to.coordinates(df);
    for (std::size_t r = 0; r < coords.size(); ++r)
      if (!is_zero(coords[r])) m.set(r, c, coords[r]);
  }
  return m;
}

inline Matrix dy_differential(const HopfAlgebra& h, std::size_t n, std::size_t cap = kDefaultCap) {
  return dy_differential(h, dy_cochain_space(h, n, cap), dy_cochain_space(h, n + 1, cap));
}

/// DY complex in arities 0..top; cohomology is exact below `top`.
inline linalg::CochainComplex dy_complex(const HopfAlgebra& h, std::size_t top, std::size_t cap = kDefaultCap) {
  check_cap(h, top, cap);
  hopf::require_hopf(h);
  std::vector<DYCochainSpace> spaces;
  for (std::size_t n = 0; n <= top; ++n) spaces.push_back(dy_cochain_space(h, n, cap));
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (std::size_t n = 0; n <= top; ++n) {
    dims.push_back(spaces[n].dim());
    diffs.push_back(n < top ? dy_differential(h, spaces[n], spaces[n + 1]) : Matrix(0, dims.back()));
  }
  return linalg::CochainComplex(0, std::move(dims), std::move(diffs));
}

inline std::size_t dy_cohomology(const HopfAlgebra& h, std::size_t n, std::size_t cap = kDefaultCap) {
  return dy_complex(h, n + 1, cap).cohomology_dim(static_cast<int>(n));
}

/// H^n(DY(Rep G)) = (wedge^n g)^G for reductive G, computed infinitesimally.
inline std::size_t rep_g_dy_dim(const lie::LieAlgebra& l, std::size_t n) {
  if (n > l.dim()) return 0;
  return lie::invariant_dim(lie::power_rep(l, lie::PowerKind::Wedge, n));
}

}  // namespace deforma::dy
