#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deforma/artin.hpp"
#include "deforma/dgla.hpp"
#include "deforma/polynomial.hpp"
#include "deforma/rational.hpp"
#include "deforma/tower.hpp"

namespace deforma::mc {

/// An element of g^1 (x) (hbar) over k[hbar]/hbar^m: components[j-1] is the
/// coefficient of hbar^j for 1 <= j <= m-1.
struct MCElement {
  int order = 1;
  std::vector<Vector> components;
};

/// An element of g^0 (x) (hbar), laid out like MCElement.
struct GaugeElement {
  int order = 1;
  std::vector<Vector> components;
};

namespace detail {

inline void require_window(const DGLA& g) {
  if (!g.in_window(0) || !g.in_window(1) || !g.in_window(2))
    throw DomainError("Maurer-Cartan computations need a degree window containing 0, 1 and 2");
}

// Truncated series sum_{j>=1} hbar^j x_j with x_j in g^deg; index 0 unused.
using Series = std::vector<Vector>;

inline Series zero_series(const DGLA& g, int deg, int m) {
  return Series(static_cast<std::size_t>(m), Vector(g.dim(deg)));
}

inline Series bracket(const DGLA& g, int i, const Series& x, int j, const Series& y) {
  const int m = static_cast<int>(x.size());
  Series out = zero_series(g, i + j, m);
  for (int a = 1; a < m; ++a)
    for (int b = 1; a + b < m; ++b) {
      const Vector v = g.bracket(i, x[a], j, y[b]);
      for (std::size_t k = 0; k < v.size(); ++k) out[a + b][k] += v[k];
    }
  return out;
}

inline void axpy(Series& acc, const Rational& s, const Series& x) {
  for (std::size_t a = 0; a < acc.size(); ++a)
    for (std::size_t k = 0; k < acc[a].size(); ++k) acc[a][k] += s * x[a][k];
}

inline bool is_zero_series(const Series& s) {
  for (const auto& v : s)
    for (const auto& x : v)
      if (!is_zero(x)) return false;
  return true;
}

template <class E>
Series to_series(const DGLA& g, int deg, const E& e) {
  if (e.order < 1) throw DomainError("coefficient ring order must be >= 1");
  if (e.components.size() != static_cast<std::size_t>(e.order - 1))
    throw DomainError("element needs one component per order 1..m-1");
  Series s = zero_series(g, deg, e.order);
  for (int j = 1; j < e.order; ++j) {
    if (e.components[j - 1].size() != g.dim(deg)) throw DomainError("component has wrong length");
    s[j] = e.components[j - 1];
  }
  return s;
}

}  // namespace detail

/// Per-order values of d alpha + 1/2 [alpha, alpha] in g^2, hbar^1..hbar^{m-1}.
inline std::vector<Vector> mc_residual(const DGLA& g, const MCElement& alpha) {
  detail::require_window(g);
  const auto a = detail::to_series(g, 1, alpha);
  auto r = detail::bracket(g, 1, a, 1, a);
  for (auto& v : r)
    for (auto& x : v) x /= 2;
  for (std::size_t j = 1; j < a.size(); ++j) {
    const Vector dv = g.d(1, a[j]);
    for (std::size_t k = 0; k < dv.size(); ++k) r[j][k] += dv[k];
  }
  return {r.begin() + 1, r.end()};
}

inline bool is_mc(const DGLA& g, const MCElement& alpha) {
  for (const auto& v : mc_residual(g, alpha))
    for (const auto& x : v)
      if (!is_zero(x)) return false;
  return true;
}

/// alpha' = e^{ad lambda}(alpha) - sum_{k>=0} ad_lambda^k / (k+1)! (d lambda).
/// The sums are finite because ad_lambda raises the hbar-order.
inline MCElement gauge_act(const DGLA& g, const GaugeElement& lambda, const MCElement& alpha) {
  detail::require_window(g);
  if (lambda.order != alpha.order) throw DomainError("gauge and MC element live over different rings");
  const auto l = detail::to_series(g, 0, lambda);
  const auto a = detail::to_series(g, 1, alpha);
  const int m = alpha.order;
  detail::Series dl = detail::zero_series(g, 1, m);
  for (int j = 1; j < m; ++j) dl[j] = g.d(0, l[j]);

  detail::Series out = a;
  detail::Series term = a;   // ad^k alpha
  detail::Series dterm = dl;  // ad^k dlambda
  detail::axpy(out, Rational(-1), dl);
  for (int k = 1; k < m; ++k) {
    term = detail::bracket(g, 0, l, 1, term);
    dterm = detail::bracket(g, 0, l, 1, dterm);
    detail::axpy(out, Rational(1) / factorial(k), term);
    detail::axpy(out, Rational(-1) / factorial(k + 1), dterm);
  }
  MCElement r{m, {}};
  for (int j = 1; j < m; ++j) r.components.push_back(out[j]);
  return r;
}

enum class MCStatus { Unobstructed, Obstructed, Symbolic };

inline std::string to_string(MCStatus s) {
  switch (s) {
    case MCStatus::Unobstructed: return "unobstructed";
    case MCStatus::Obstructed: return "obstructed";
    case MCStatus::Symbolic: return "symbolic";
  }
  return "unknown";
}

/// Result of the order-by-order solution of the MC equation over
/// k[hbar]/hbar^m, modulo first-order gauge at each order.
struct MCModuli {
  int order = 1;
  MCStatus status = MCStatus::Unobstructed;
  /// First order at which an obstruction cut down the parameters (Obstructed)
  /// or could not be resolved (Symbolic); 0 otherwise.
  int critical_order = 0;
  /// Surviving parameters introduced at hbar^1 .. hbar^{m-1}.
  std::vector<std::size_t> per_order_dims;
  /// Order-1 classes (H^1 directions) that extend to the whole ring.
  std::size_t first_order_dim = 0;
  /// Parameter t_v was introduced at order parameter_order[v].
  std::vector<int> parameter_order;
  /// Parameters still free in `family`.
  std::vector<std::size_t> free_parameters;
  /// General solution: family[j-1] is alpha_j in g^1 with polynomial entries.
  std::vector<PolyVector> family;
  /// Unresolved polynomial equations (Symbolic status only).
  std::vector<Polynomial> residual_system;

  /// The dimension reported as the moduli dimension: extendable first-order
  /// classes.
  std::size_t moduli_dimension() const { return first_order_dim; }

  /// Specializes the family at the given parameter values.
  MCElement specialize(const std::map<std::size_t, Rational>& point) const {
    MCElement e{order, {}};
    for (const auto& pv : family) {
      Vector v;
      for (const auto& p : pv) v.push_back(p.evaluate(point));
      e.components.push_back(std::move(v));
    }
    return e;
  }
};

namespace detail {

inline PolyVector poly_bracket(const DGLA& g, int i, const PolyVector& x, int j, const PolyVector& y) {
  PolyVector out(g.dim(i + j));
  if (!g.in_window(i + j)) return out;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < y.size(); ++b) {
      if (y[b].is_zero()) continue;
      const Vector v = g.bracket_basis(i, a, j, b);
      const Polynomial c = x[a] * y[b];
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!is_zero(v[k])) out[k] += c.scaled(v[k]);
    }
  }
  return out;
}

inline PolyVector poly_apply(const Matrix& m, const PolyVector& x) {
  PolyVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) out[r] += x[c].scaled(v);
  return out;
}

}  // namespace detail

/// Solves dalpha + 1/2 [alpha, alpha] = 0 over k[hbar]/hbar^m order by order.
///
/// At order j the unknown alpha_j enters through d; the rest of the equation
/// is the obstruction O_j = 1/2 sum_{a+b=j} [alpha_a, alpha_b], polynomial in
/// the parameters chosen so far. Its image in coker(d^1) must vanish. Linear
/// conditions are solved by substitution and conditions of the form
/// c * t^k = 0 force t = 0; anything else stops with a symbolic residual.
/// Fresh parameters at each order run over H^1 representatives, which
/// removes the first-order gauge freedom alpha_j -> alpha_j - d lambda_j.
inline MCModuli solve_mc(const DGLA& g, const artin::ArtinMonomialAlgebra& ring) {
  detail::require_window(g);
  require_dgla(g);
  const int m = static_cast<int>(ring.order());
  MCModuli out;
  out.order = m;
  const Matrix d0 = g.differential(0), d1 = g.differential(1);
  const Matrix h1 = [&] {
    const Matrix cycles = linalg::kernel_basis(d1);
    const Matrix both = Matrix::hstack({d0, cycles});
    std::vector<Vector> reps;
    for (auto c : linalg::independent_columns(both))
      if (c >= d0.cols()) reps.push_back(cycles.column(c - d0.cols()));
    return Matrix::from_columns(reps, g.dim(1));
  }();
  const Matrix coker = linalg::cokernel_functionals(d1);  // rows annihilate im d^1

  std::vector<bool> alive;
  auto substitute_all = [&](std::size_t v, const Polynomial& q, std::vector<Polynomial>& pending) {
    for (auto& pv : out.family)
      for (auto& p : pv) p = p.substitute(v, q);
    for (auto& p : pending) p = p.substitute(v, q);
    alive[v] = false;
  };

  for (int j = 1; j < m; ++j) {
    PolyVector obstruction(g.dim(2));
    for (int a = 1; a < j; ++a) {
      const PolyVector t = detail::poly_bracket(g, 1, out.family[a - 1], 1, out.family[j - a - 1]);
      for (std::size_t k = 0; k < t.size(); ++k) obstruction[k] += t[k].scaled(Rational(1, 2));
    }
    std::vector<Polynomial> pending = [&] {
      std::vector<Polynomial> eqs;
      for (const auto& e : detail::poly_apply(coker, obstruction))
        if (!e.is_zero()) eqs.push_back(e);
      return eqs;
    }();
    if (!pending.empty() && out.critical_order == 0) {
      out.critical_order = j;
      out.status = MCStatus::Obstructed;
    }
    // Resolve conditions until none is left or none can be handled.
    bool progress = true;
    while (progress) {
      progress = false;
      std::vector<Polynomial> next;
      for (std::size_t idx = 0; idx < pending.size(); ++idx) {
        const Polynomial& e = pending[idx];
        if (e.is_zero()) continue;
        if (e.degree() == 0) throw InvariantViolation("inconsistent Maurer-Cartan system");
        if (progress) {
          next.push_back(e);
          continue;
        }
        std::optional<std::size_t> var;
        Polynomial value;
        if (e.degree() == 1) {
          // Eliminate the most recently introduced variable.
          for (auto v : e.variables())
            if (!is_zero(e.linear_coefficient(v))) var = v;
          const Rational c = e.linear_coefficient(*var);
          value = (e - Polynomial::variable(*var).scaled(c)).scaled(Rational(-1) / c);
        } else if (auto v = e.single_variable_power()) {
          var = v;
          value = Polynomial();
        }
        if (!var) {
          next.push_back(e);
          continue;
        }
        progress = true;
        substitute_all(*var, value, next);
        for (std::size_t rest = idx + 1; rest < pending.size(); ++rest)
          next.push_back(pending[rest].substitute(*var, value));
        break;
      }
      pending = std::move(next);
    }
    pending.erase(std::remove_if(pending.begin(), pending.end(), [](const Polynomial& p) { return p.is_zero(); }),
                  pending.end());
    if (!pending.empty()) {
      out.status = MCStatus::Symbolic;
      out.critical_order = j;
      out.residual_system = std::move(pending);
      break;
    }
    // Recompute the obstruction after substitutions and pick the particular
    // solution d alpha_j = -O_j, linear in the monomial coefficients.
    PolyVector obs(g.dim(2));
    for (int a = 1; a < j; ++a) {
      const PolyVector t = detail::poly_bracket(g, 1, out.family[a - 1], 1, out.family[j - a - 1]);
      for (std::size_t k = 0; k < t.size(); ++k) obs[k] += t[k].scaled(Rational(1, 2));
    }
    PolyVector alpha(g.dim(1));
    std::map<Polynomial::Monomial, Vector> by_monomial;
    for (std::size_t k = 0; k < obs.size(); ++k)
      for (const auto& [mono, c] : obs[k].terms()) {
        auto& v = by_monomial.try_emplace(mono, Vector(g.dim(2))).first->second;
        v[k] = -c;
      }
    for (const auto& [mono, rhs] : by_monomial) {
      auto sol = linalg::solve(d1, rhs);
      if (!sol) throw InvariantViolation("obstruction left the image of d after elimination");
      Polynomial unit_mono(Rational(1));
      for (const auto& [v, e] : mono)
        for (unsigned r = 0; r < e; ++r) unit_mono = unit_mono * Polynomial::variable(v);
      for (std::size_t k = 0; k < alpha.size(); ++k)
        if (!is_zero((*sol)[k])) alpha[k] += unit_mono.scaled((*sol)[k]);
    }
    for (std::size_t c = 0; c < h1.cols(); ++c) {
      const std::size_t v = out.parameter_order.size();
      out.parameter_order.push_back(j);
      alive.push_back(true);
      const Polynomial t = Polynomial::variable(v);
      const Vector rep = h1.column(c);
      for (std::size_t k = 0; k < rep.size(); ++k)
        if (!is_zero(rep[k])) alpha[k] += t.scaled(rep[k]);
    }
    out.family.push_back(std::move(alpha));
  }

  out.per_order_dims.assign(static_cast<std::size_t>(std::max(m - 1, 0)), 0);
  for (std::size_t v = 0; v < alive.size(); ++v)
    if (alive[v]) {
      out.free_parameters.push_back(v);
      ++out.per_order_dims[static_cast<std::size_t>(out.parameter_order[v] - 1)];
    }
  out.first_order_dim = out.per_order_dims.empty() ? 0 : out.per_order_dims[0];
  if (out.status == MCStatus::Symbolic) out.first_order_dim = 0;
  return out;
}

/// Per-order dimensions of pi_0 MC; only defined for unobstructed problems.
inline std::vector<std::size_t> pi0_dims(const DGLA& g, const artin::ArtinMonomialAlgebra& ring) {
  const MCModuli r = solve_mc(g, ring);
  if (r.status != MCStatus::Unobstructed)
    throw DomainError("Maurer-Cartan problem is " + to_string(r.status) + " at order " +
                      std::to_string(r.critical_order) + "; use the solve_mc report instead");
  return r.per_order_dims;
}

/// Cohomology dimension of the underlying complex of g at degree i.
inline std::size_t dgla_cohomology_dim(const DGLA& g, int i) {
  if (!g.in_window(i)) return 0;
  const std::size_t ker = g.dim(i) - linalg::rank(g.differential(i));
  return ker - (g.in_window(i - 1) ? linalg::rank(g.differential(i - 1)) : 0);
}

/// Tangent data of the formal moduli problem of g at operadic level N:
/// h^{N+k} = dim H^{1+k}(g), so pi_0 over k[x]/x^2 is H^1, pi_1 is H^0 and
/// obstructions sit in H^2.
inline tower::TangentProfile tangent_profile(const DGLA& g, int level) {
  tower::TangentProfile t;
  t.level = level;
  for (int i = g.lo(); i <= g.hi(); ++i)
    if (const std::size_t v = dgla_cohomology_dim(g, i)) t.h[level + i - 1] = v;
  return t;
}

}  // namespace deforma::mc
