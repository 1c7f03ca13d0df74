#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deforma/error.hpp"
#include "deforma/rational.hpp"

namespace deforma::tower {

/// Graded dimensions h^i = dim H^i(R) of the tangent data of an E_N formal
/// moduli problem. Degrees not listed are zero.
struct TangentProfile {
  int level = 2;
  std::map<int, std::size_t> h;

  std::size_t at(int degree) const {
    auto it = h.find(degree);
    return it == h.end() ? 0 : it->second;
  }

  bool is_zero() const {
    for (const auto& [d, v] : h)
      if (v) return false;
    return true;
  }

  void validate() const {
    if (level < 2) throw DomainError("operadic level N must be >= 2");
  }
};

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

/// Dimension known up to an interval; exact when lo == hi.
struct Interval {
  std::size_t lo = 0;
  std::size_t hi = 0;

  static Interval exact(std::size_t v) { return {v, v}; }
  bool is_exact() const { return lo == hi; }
  bool contains(std::size_t v) const { return lo <= v && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// pi_* of the moduli space evaluated on one test algebra.
struct HomotopyProfile {
  /// "k[x]/x^m", "k+k[m]" or "k[[x]]".
  std::string tag;
  /// m for k[x]/x^m and for k+k[m]; 0 for the limit.
  int order = 0;
  /// pi[i] for i = 0 .. tracked range; higher groups are zero.
  std::vector<Interval> pi;
  /// Dimension of the classes of the previous stage that lift to this one
  /// (the kernel of the obstruction map). Equal to pi_0 for base cases.
  Interval liftable;
  /// Whether pi_0 of this stage is known to surject onto pi_0 of the previous
  /// stage (the obstruction map is forced to vanish).
  bool pi0_onto = true;
  /// Whether pi_2 of the previous stage is known to surject onto pi_2 of the
  /// square-zero target k+k[1].
  bool pi2_onto = true;
  /// Formal limit only: the per-order pi_0 dimension stream and its symbolic
  /// name.
  std::vector<std::size_t> stream;
  std::string symbolic;

  Interval pi_at(std::size_t i) const { return i < pi.size() ? pi[i] : Interval{}; }
  Interval pi0() const { return pi_at(0); }
  Interval pi1() const { return pi_at(1); }
};

namespace detail {

/// Homotopy degrees tracked: pi_i can only be nonzero when h^{N+1-i} or
/// h^{N-i} is, so N + 1 - (lowest nonzero degree) bounds the range.
inline std::size_t tracked(const TangentProfile& t) {
  int lowest = std::numeric_limits<int>::max();
  for (const auto& [d, v] : t.h)
    if (v) lowest = std::min(lowest, d);
  if (lowest == std::numeric_limits<int>::max()) return 2;
  return static_cast<std::size_t>(std::max(2, t.level + 2 - lowest));
}

/// pi_i(k + k[1]) = h^{N+1-i}.
inline std::size_t square_zero_pi(const TangentProfile& t, std::size_t i) {
  return t.at(t.level + 1 - static_cast<int>(i));
}

}  // namespace detail

/// X(k + k[m]) = m_A[N+m] truncated: pi_i = h^{N+m-i}. For m = 0 this is
/// the first-order algebra k[x]/x^2.
inline HomotopyProfile base_profile(const TangentProfile& t, int m) {
  t.validate();
  if (m < 0) throw DomainError("square-zero shift must be >= 0");
  HomotopyProfile p;
  p.tag = m == 0 ? "k[x]/x^2" : "k+k[" + std::to_string(m) + "]";
  p.order = m == 0 ? 2 : m;
  const std::size_t n = detail::tracked(t) + static_cast<std::size_t>(m);
  for (std::size_t i = 0; i < n; ++i) p.pi.push_back(Interval::exact(t.at(t.level + m - static_cast<int>(i))));
  p.liftable = p.pi0();
  return p;
}

/// One step of the tower: F = X(k[x]/x^{m+1}) is the fiber of
/// E = X(k[x]/x^m) -> B = X(k + k[1]). The long exact sequence
///   pi_{i+1} E -> pi_{i+1} B -> pi_i F -> pi_i E -> pi_i B
/// gives dim pi_i F = (B_{i+1} - r_{i+1}) + (E_i - r_i) with r_i the rank of
/// pi_i E -> pi_i B, unknown in [0, min(E_i, B_i)]. Dimensions are exact
/// exactly when every such rank is forced.
inline HomotopyProfile tower_step(const TangentProfile& t, const HomotopyProfile& e) {
  t.validate();
  if (e.order < 2 || e.tag.rfind("k[x]/x^", 0) != 0) throw DomainError("tower_step needs a k[x]/x^m profile");
  const std::size_t n = std::max(e.pi.size(), detail::tracked(t));
  auto b = [&](std::size_t i) { return detail::square_zero_pi(t, i); };
  // Interval for E_i - r_i (kernel of pi_i E -> pi_i B) and B_i - r_i (cokernel).
  auto kernel = [&](std::size_t i) {
    const Interval ei = e.pi_at(i);
    return Interval{ei.lo > b(i) ? ei.lo - b(i) : 0, ei.hi};
  };
  auto cokernel = [&](std::size_t i) {
    const Interval ei = e.pi_at(i);
    const std::size_t bi = b(i);
    return Interval{bi > ei.hi ? bi - ei.hi : 0, bi};
  };
  HomotopyProfile f;
  f.order = e.order + 1;
  f.tag = "k[x]/x^" + std::to_string(f.order);
  for (std::size_t i = 0; i < n; ++i) {
    const Interval c = cokernel(i + 1), k = kernel(i);
    f.pi.push_back({c.lo + k.lo, c.hi + k.hi});
  }
  f.liftable = kernel(0);
  f.pi0_onto = b(0) == 0 || e.pi0().hi == 0;
  f.pi2_onto = b(2) == 0;
  return f;
}

/// Profiles for k[x]/x^2 .. k[x]/x^max_order.
inline std::vector<HomotopyProfile> tower_profiles(const TangentProfile& t, int max_order) {
  if (max_order < 2) throw DomainError("tower order must be >= 2");
  std::vector<HomotopyProfile> out{base_profile(t, 0)};
  while (out.back().order < max_order) out.push_back(tower_step(t, out.back()));
  return out;
}

/// Milnor sequence for k[[x]] = lim k[x]/x^m. With finite-dimensional exact
/// pi_1 the tower is Mittag-Leffler, lim^1 pi_1 = 0, and pi_0 of the limit is
/// the inverse limit of the pi_0 tower. When every transition on pi_0 is
/// onto, that limit is the product of the per-order increments, reported as
/// the stream [d_1, d_2, ...].
inline HomotopyProfile formal_limit(const TangentProfile& t, const std::vector<HomotopyProfile>& tower) {
  t.validate();
  if (tower.empty()) throw DomainError("formal limit needs a nonempty tower");
  for (const auto& p : tower) {
    if (!p.pi0().is_exact() || !p.pi1().is_exact())
      throw DomainError("Mittag-Leffler condition undecidable: " + p.tag + " has interval-valued pi_0 or pi_1");
    if (!p.pi0_onto)
      throw DomainError("pi_0 transition into " + p.tag + " is not known to be surjective");
  }
  HomotopyProfile lim;
  lim.tag = "k[[x]]";
  std::size_t prev = 0;
  for (const auto& p : tower) {
    const std::size_t v = p.pi0().lo;
    lim.stream.push_back(v >= prev ? v - prev : 0);
    prev = v;
  }
  const bool all_zero = std::all_of(lim.stream.begin(), lim.stream.end(), [](std::size_t d) { return d == 0; });
  const bool constant_one =
      std::all_of(lim.stream.begin(), lim.stream.end(), [](std::size_t d) { return d == 1; });
  lim.symbolic = all_zero ? "point" : constant_one ? "prod_Z k" : "prod_m k^{d_m}";
  lim.pi.push_back(all_zero ? Interval::exact(0) : Interval{1, kUnbounded});
  // lim of the pi_1 tower: zero when pi_1 vanishes along the tail.
  lim.pi.push_back(tower.back().pi1().lo == 0 ? Interval::exact(0) : Interval{0, kUnbounded});
  lim.liftable = lim.pi0();
  return lim;
}

/// lim^1 of the pi_1 tower.
inline std::string lim1_flag(const std::vector<HomotopyProfile>& tower) {
  for (const auto& p : tower)
    if (!p.pi1().is_exact()) return "undecided";
  const bool zero = std::all_of(tower.begin(), tower.end(), [](const HomotopyProfile& p) { return p.pi1().hi == 0; });
  return zero ? "vanishes (pi_1 = 0)" : "vanishes (finite-dimensional pi_1, Mittag-Leffler)";
}

struct UniquenessVerdict {
  bool unique = false;
  std::vector<std::string> failed;
  /// "End(k[[x]])" when unique.
  std::string model;

  std::string label() const { return unique ? "UNIQUE" : "INCONCLUSIVE"; }
};

/// h^N = k and h^{N-1} = h^{N+1} = 0 give pi_0 X(k[[x]]) = End(k[[x]]):
/// the deformation is unique up to reparametrization by Aut(k[[x]]).
inline UniquenessVerdict uniqueness_check(const TangentProfile& t) {
  UniquenessVerdict v;
  const int n = t.level;
  if (n < 2) v.failed.push_back("level N >= 2");
  if (t.at(n) != 1) v.failed.push_back("h^" + std::to_string(n) + " = 1 (found " + std::to_string(t.at(n)) + ")");
  if (t.at(n - 1) != 0)
    v.failed.push_back("h^" + std::to_string(n - 1) + " = 0 (found " + std::to_string(t.at(n - 1)) + ")");
  if (t.at(n + 1) != 0)
    v.failed.push_back("h^" + std::to_string(n + 1) + " = 0 (found " + std::to_string(t.at(n + 1)) + ")");
  v.unique = v.failed.empty();
  if (v.unique) v.model = "End(k[[x]])";
  return v;
}

enum class EndoKind { Zero, UnitOrbit, VanishingOrder };

struct EndoClass {
  EndoKind kind = EndoKind::Zero;
  /// Order of vanishing d >= 2 for VanishingOrder, 1 for UnitOrbit.
  std::size_t order = 0;

  std::string label() const {
    switch (kind) {
      case EndoKind::Zero: return "zero";
      case EndoKind::UnitOrbit: return "unit-orbit";
      case EndoKind::VanishingOrder: return "vanishing-order " + std::to_string(order);
    }
    return "unknown";
  }
  friend bool operator==(const EndoClass&, const EndoClass&) = default;
};

/// Orbit of x -> a_1 x + a_2 x^2 + ... under precomposition with Aut(k[[x]]).
/// a[0] is a_1. Finer coset data of a_d over non-closed fields is not
/// distinguished.
inline EndoClass classify_endomorphism(const std::vector<Rational>& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!is_zero(a[i])) return i == 0 ? EndoClass{EndoKind::UnitOrbit, 1} : EndoClass{EndoKind::VanishingOrder, i + 1};
  return {};
}

struct TowerReport {
  TangentProfile tangent;
  std::vector<HomotopyProfile> orders;
  std::optional<HomotopyProfile> limit;
  std::string limit_refusal;
  std::string lim1;
  UniquenessVerdict verdict;
};

inline TowerReport run_tower(const TangentProfile& t, int max_order) {
  TowerReport r;
  r.tangent = t;
  r.orders = tower_profiles(t, max_order);
  try {
    r.limit = formal_limit(t, r.orders);
  } catch (const DomainError& e) {
    r.limit_refusal = e.what();
  }
  r.lim1 = lim1_flag(r.orders);
  r.verdict = uniqueness_check(t);
  return r;
}

}  // namespace deforma::tower
