#pragma once

#include <cstddef>
#include <cstdint>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "deforma/dgla.hpp"
#include "deforma/error.hpp"
#include "deforma/hochschild.hpp"
#include "deforma/hopf.hpp"
#include "deforma/lie.hpp"
#include "deforma/tower.hpp"

/// JSON encodings of every input and output type. Rationals travel as "p/q"
/// strings (plain integers are accepted on input); floats are rejected.
namespace deforma::io {

using json = nlohmann::json;
using linalg::Matrix;
using linalg::Vector;

inline json to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw MalformedInput("expected a rational as \"p/q\" or an integer, found " + j.dump());
}

inline json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline Vector vector_from_json(const json& j, std::size_t expected, const std::string& what) {
  if (!j.is_array()) throw MalformedInput(what + " must be an array");
  if (j.size() != expected)
    throw MalformedInput(what + " must have length " + std::to_string(expected) + ", found " +
                         std::to_string(j.size()));
  Vector v(expected);
  for (std::size_t i = 0; i < expected; ++i) v[i] = rational_from_json(j[i]);
  return v;
}

inline std::size_t index_from_json(const json& j, std::size_t bound, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long>() >= 0))
    throw MalformedInput(what + " must be a nonnegative integer, found " + j.dump());
  const auto v = j.get<std::size_t>();
  if (v >= bound) throw MalformedInput(what + " " + std::to_string(v) + " out of range (< " + std::to_string(bound) + ")");
  return v;
}

inline const json& field(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput("missing field \"" + key + "\"");
  return j.at(key);
}

inline std::size_t size_field(const json& j, const std::string& key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long>() < 0)
    throw MalformedInput("field \"" + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

inline int int_field(const json& j, const std::string& key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw MalformedInput("field \"" + key + "\" must be an integer");
  return v.get<int>();
}

/// Sparse linear combination [[k, "c"], ...] as a vector of length dim.
inline Vector combination_from_json(const json& j, std::size_t dim, const std::string& what) {
  if (!j.is_array()) throw MalformedInput(what + " must be a list of [index, coefficient] pairs");
  Vector v(dim);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2) throw MalformedInput(what + " terms must be [index, coefficient]");
    v[index_from_json(term[0], dim, what + " index")] += rational_from_json(term[1]);
  }
  return v;
}

/// {"rows": r, "cols": c, "entries": [[i, j, "v"], ...]}
inline Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  if (j.is_object() && (j.contains("rows") || j.contains("cols")))
    if (size_field(j, "rows") != rows || size_field(j, "cols") != cols)
      throw MalformedInput(what + " must be " + std::to_string(rows) + " x " + std::to_string(cols));
  const json& entries = j.is_object() ? field(j, "entries") : j;
  if (!entries.is_array()) throw MalformedInput(what + " entries must be an array of [row, col, value]");
  Matrix m(rows, cols);
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 3) throw MalformedInput(what + " entries must be [row, col, value]");
    m.add(index_from_json(e[0], rows, what + " row"), index_from_json(e[1], cols, what + " column"),
          rational_from_json(e[2]));
  }
  return m;
}

inline json to_json(const Matrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [c, v] : m.row(i)) entries.push_back({i, c, to_string(v)});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline std::string builtin_name(const json& j) { return j.is_string() ? j.get<std::string>() : std::string(); }

// ---------------------------------------------------------------------------
// Lie algebras: {"dim": d, "brackets": [[i, j, [[k, "c"], ...]], ...]} with i < j.

inline lie::LieAlgebra lie_from_json(const json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "sl2") return lie::LieAlgebra::sl2();
    if (name == "sl3") return lie::LieAlgebra::sl3();
    if (name == "aff1") return lie::LieAlgebra::affine_line();
    if (name == "zero") return lie::LieAlgebra::abelian(0);
    std::smatch m;
    static const std::regex abelian(R"(abelian\((\d{1,2})\))");
    if (std::regex_match(name, m, abelian)) return lie::LieAlgebra::abelian(std::stoul(m[1]));
    throw MalformedInput("unknown built-in Lie algebra \"" + name + "\"");
  }
  const std::size_t d = size_field(j, "dim");
  std::vector<lie::LieAlgebra::Bracket> brackets;
  if (j.contains("brackets")) {
    const json& list = j.at("brackets");
    if (!list.is_array()) throw MalformedInput("\"brackets\" must be an array");
    for (const auto& b : list) {
      if (!b.is_array() || b.size() != 3) throw MalformedInput("bracket entries must be [i, j, [[k, c], ...]]");
      lie::LieAlgebra::Bracket br{index_from_json(b[0], d, "bracket index"), index_from_json(b[1], d, "bracket index"),
                                  {}};
      if (!b[2].is_array()) throw MalformedInput("bracket value must be a list of [k, c]");
      for (const auto& term : b[2]) {
        if (!term.is_array() || term.size() != 2) throw MalformedInput("bracket terms must be [k, c]");
        br.value.emplace_back(index_from_json(term[0], d, "bracket value index"), rational_from_json(term[1]));
      }
      brackets.push_back(std::move(br));
    }
  }
  return lie::LieAlgebra::from_brackets(d, brackets, j.value("name", std::string("custom")));
}

// ---------------------------------------------------------------------------
// Associative algebras: {"dim": d, "unit": [...], "products": [[i, j, [[k, "c"], ...]], ...]}.

inline hochschild::AssociativeAlgebra algebra_from_json(const json& j) {
  using hochschild::AssociativeAlgebra;
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "k") return AssociativeAlgebra::ground_field();
    if (name == "dual_numbers") return AssociativeAlgebra::dual_numbers();
    if (name == "m2") return AssociativeAlgebra::matrix_algebra(2);
    if (name == "upper2") return AssociativeAlgebra::upper_triangular2();
    std::smatch m;
    static const std::regex trunc(R"(k\[x\]/x\^(\d{1,2}))");
    if (std::regex_match(name, m, trunc) && std::stoul(m[1]) >= 1)
      return AssociativeAlgebra::truncated_polynomial(std::stoul(m[1]));
    throw MalformedInput("unknown built-in algebra \"" + name + "\"");
  }
  const std::size_t d = size_field(j, "dim");
  Matrix table(d, d * d);
  const json& products = field(j, "products");
  if (!products.is_array()) throw MalformedInput("\"products\" must be an array");
  for (const auto& p : products) {
    if (!p.is_array() || p.size() != 3) throw MalformedInput("product entries must be [i, j, [[k, c], ...]]");
    const std::size_t a = index_from_json(p[0], d, "product index"), b = index_from_json(p[1], d, "product index");
    const Vector v = combination_from_json(p[2], d, "product value");
    for (std::size_t k = 0; k < d; ++k)
      if (!is_zero(v[k])) table.add(k, a * d + b, v[k]);
  }
  return AssociativeAlgebra(d, std::move(table), vector_from_json(field(j, "unit"), d, "unit"),
                            j.value("name", std::string("custom")));
}

/// Star-product data {"order": m, "maps": [[[i, j, k, "c"], ...], ...]}:
/// map s lists B_{s+1}(e_i, e_j) = sum c e_k.
inline hochschild::StarProductData star_from_json(const json& j, std::size_t d) {
  hochschild::StarProductData s;
  s.order = int_field(j, "order");
  const json& maps = field(j, "maps");
  if (!maps.is_array()) throw MalformedInput("\"maps\" must be an array");
  for (const auto& m : maps) {
    auto c = hochschild::HochschildCochain::zero(d, 2);
    if (!m.is_array()) throw MalformedInput("each star-product map is a list of [i, j, k, c]");
    for (const auto& e : m) {
      if (!e.is_array() || e.size() != 4) throw MalformedInput("star-product entries must be [i, j, k, c]");
      const std::size_t a = index_from_json(e[0], d, "input index"), b = index_from_json(e[1], d, "input index");
      c.values.add(index_from_json(e[2], d, "output index"), a * d + b, rational_from_json(e[3]));
    }
    s.maps.push_back(std::move(c));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Hopf algebras: {"group_table": [[...]], "generators": [...]} or
// {"algebra": ..., "coproduct": [[a, [[i, j, "c"], ...]], ...], "counit": [...],
//  "antipode": [[a, [[k, "c"], ...]], ...], "generators": [...]}.

inline hopf::HopfAlgebra hopf_from_json(const json& j) {
  using hopf::HopfAlgebra;
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "k" || name == "trivial") return HopfAlgebra::trivial();
    if (name == "kS3") return HopfAlgebra::symmetric3();
    if (name == "sweedler4") return HopfAlgebra::sweedler();
    std::smatch m;
    static const std::regex cyclic(R"(kC(\d{1,2}))");
    if (std::regex_match(name, m, cyclic) && std::stoul(m[1]) >= 1) return HopfAlgebra::cyclic(std::stoul(m[1]));
    throw MalformedInput("unknown built-in Hopf algebra \"" + name + "\"");
  }
  std::vector<std::size_t> gens;
  auto read_generators = [&](std::size_t d) {
    if (!j.contains("generators")) return;
    if (!j.at("generators").is_array()) throw MalformedInput("\"generators\" must be an array");
    for (const auto& g : j.at("generators")) gens.push_back(index_from_json(g, d, "generator"));
  };
  if (j.is_object() && j.contains("group_table")) {
    const json& t = j.at("group_table");
    if (!t.is_array()) throw MalformedInput("\"group_table\" must be a square array");
    const std::size_t n = t.size();
    std::vector<std::vector<std::size_t>> table;
    for (const auto& row : t) {
      if (!row.is_array() || row.size() != n) throw MalformedInput("group table must be square");
      std::vector<std::size_t> r;
      for (const auto& x : row) r.push_back(index_from_json(x, n, "group element"));
      table.push_back(std::move(r));
    }
    read_generators(n);
    return HopfAlgebra::group_algebra(table, j.value("name", std::string("custom")), gens);
  }
  auto algebra = algebra_from_json(field(j, "algebra"));
  const std::size_t d = algebra.dim();
  Matrix delta(d * d, d), s(d, d);
  for (const auto& e : field(j, "coproduct")) {
    if (!e.is_array() || e.size() != 2) throw MalformedInput("coproduct entries must be [a, [[i, j, c], ...]]");
    const std::size_t a = index_from_json(e[0], d, "coproduct index");
    for (const auto& t : e[1]) {
      if (!t.is_array() || t.size() != 3) throw MalformedInput("coproduct terms must be [i, j, c]");
      delta.add(index_from_json(t[0], d, "coproduct term") * d + index_from_json(t[1], d, "coproduct term"), a,
                rational_from_json(t[2]));
    }
  }
  for (const auto& e : field(j, "antipode")) {
    if (!e.is_array() || e.size() != 2) throw MalformedInput("antipode entries must be [a, [[k, c], ...]]");
    const std::size_t a = index_from_json(e[0], d, "antipode index");
    const Vector v = combination_from_json(e[1], d, "antipode value");
    for (std::size_t k = 0; k < d; ++k)
      if (!is_zero(v[k])) s.set(k, a, v[k]);
  }
  read_generators(d);
  return HopfAlgebra(std::move(algebra), std::move(delta), vector_from_json(field(j, "counit"), d, "counit"),
                     std::move(s), gens);
}

// ---------------------------------------------------------------------------
// dgLas: {"lo": l, "dims": [...], "differentials": [[[r, c, "v"], ...], ...],
//         "brackets": [[i, a, j, b, [[k, "c"], ...]], ...]}.

inline mc::DGLA dgla_from_json(const json& j) {
  using mc::DGLA;
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "toy") return DGLA::toy_square();
    if (name == "sl2_eps") return DGLA::sl2_dual();
    if (name == "nilpotent") return DGLA::nilpotent_toy();
    throw MalformedInput("unknown built-in dgLa \"" + name + "\"");
  }
  const int lo = int_field(j, "lo");
  std::vector<std::size_t> dims;
  const json& dj = field(j, "dims");
  if (!dj.is_array() || dj.empty()) throw MalformedInput("\"dims\" must be a nonempty array");
  for (const auto& x : dj) {
    if (!x.is_number_integer() || x.get<long>() < 0) throw MalformedInput("dims must be nonnegative integers");
    dims.push_back(x.get<std::size_t>());
  }
  std::vector<Matrix> diffs;
  if (j.contains("differentials")) {
    const json& list = j.at("differentials");
    if (!list.is_array() || list.size() != dims.size())
      throw MalformedInput("one differential per degree is required");
    for (std::size_t k = 0; k < dims.size(); ++k)
      diffs.push_back(matrix_from_json(list[k], k + 1 < dims.size() ? dims[k + 1] : 0, dims[k],
                                       "differential " + std::to_string(lo + static_cast<int>(k))));
  }
  DGLA g(lo, dims, std::move(diffs), j.value("name", std::string("custom")));
  if (j.contains("brackets")) {
    for (const auto& b : j.at("brackets")) {
      if (!b.is_array() || b.size() != 5) throw MalformedInput("bracket entries must be [i, a, j, b, [[k, c], ...]]");
      if (!b[0].is_number_integer() || !b[2].is_number_integer())
        throw MalformedInput("bracket degrees must be integers");
      const int di = b[0].get<int>(), dj2 = b[2].get<int>();
      if (!g.in_window(di) || !g.in_window(dj2)) throw MalformedInput("bracket degree outside the window");
      const std::size_t a = index_from_json(b[1], g.dim(di), "bracket index");
      const std::size_t c = index_from_json(b[3], g.dim(dj2), "bracket index");
      const std::size_t target = g.dim(di + dj2);
      if (!g.in_window(di + dj2)) {
        if (!b[4].empty()) throw MalformedInput("bracket lands outside the degree window");
        continue;
      }
      g.set_bracket(di, a, dj2, c, combination_from_json(b[4], target, "bracket value"));
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Tangent data {"level": N, "h": {"4": 1, ...}}.

inline tower::TangentProfile tangent_from_json(const json& j) {
  tower::TangentProfile t;
  t.level = int_field(j, "level");
  if (j.contains("h")) {
    const json& h = j.at("h");
    if (!h.is_object()) throw MalformedInput("\"h\" must map degrees to dimensions");
    for (const auto& [key, v] : h.items()) {
      int degree = 0;
      try {
        std::size_t used = 0;
        degree = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw MalformedInput("tangent degree \"" + key + "\" is not an integer");
      }
      if (!v.is_number_integer() || v.get<long>() < 0)
        throw MalformedInput("tangent dimensions must be nonnegative integers");
      if (v.get<std::size_t>()) t.h[degree] = v.get<std::size_t>();
    }
  }
  t.validate();
  return t;
}

inline json to_json(const tower::TangentProfile& t) {
  json h = json::object();
  for (const auto& [d, v] : t.h)
    if (v) h[std::to_string(d)] = v;
  return {{"level", t.level}, {"h", h}};
}

/// Exact dimensions as integers, intervals as {"lo", "hi"} with "inf" for an
/// unbounded top.
inline json to_json(const tower::Interval& i) {
  if (i.is_exact()) return i.lo;
  json hi = i.hi == tower::kUnbounded ? json("inf") : json(i.hi);
  return {{"lo", i.lo}, {"hi", hi}};
}

inline json to_json(const tower::HomotopyProfile& p) {
  json pi = json::array();
  for (const auto& i : p.pi) pi.push_back(to_json(i));
  json out{{"tag", p.tag}, {"order", p.order}, {"pi", pi}, {"liftable", to_json(p.liftable)}};
  if (!p.stream.empty() || !p.symbolic.empty()) {
    out["stream"] = p.stream;
    out["symbolic"] = p.symbolic;
  } else {
    out["pi0_onto"] = p.pi0_onto;
  }
  return out;
}

/// FNV-1a 64-bit hash as 16 lowercase hex digits.
inline std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return out;
}

}  // namespace deforma::io
