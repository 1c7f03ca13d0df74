#pragma once

#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "deforma/bg_poisson.hpp"
#include "deforma/davydov_yetter.hpp"
#include "deforma/hochschild.hpp"
#include "deforma/io.hpp"
#include "deforma/lie.hpp"
#include "deforma/mc.hpp"
#include "deforma/tower.hpp"

/// Job dispatch behind the `deforma` executable. Every command takes a JSON
/// payload and returns a deterministic JSON report.
namespace deforma::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kInternal = 1, kMalformed = 2, kInvariant = 3, kCap = 4 };

struct JobSpec {
  std::string command;
  json input = json::object();
  /// --cap; wins over a "cap" field in the payload and over DEFORMA_CAP.
  std::optional<std::size_t> cap;
  /// --order; wins over an "order" field in the payload.
  std::optional<int> order;
};

struct Outcome {
  int exit_code = kOk;
  /// Set on success.
  json report;
  /// Set on failure: {"error": kind, "message": ..., optional "triple"}.
  json diagnostic;
};

/// Law violation carrying the first failing basis triple.
class LawViolation : public InvariantViolation {
 public:
  LawViolation(const std::string& what, std::array<std::size_t, 3> triple)
      : InvariantViolation(what), triple_(triple) {}
  const std::array<std::size_t, 3>& triple() const noexcept { return triple_; }

 private:
  std::array<std::size_t, 3> triple_;
};

namespace detail {

struct Context {
  json input;
  std::size_t cap = 0;
};

struct Result {
  json result;
  json provenance = json::array();
};

using Handler = std::function<Result(const Context&)>;

struct Command {
  std::size_t default_cap;
  /// What the cap bounds, echoed in the report metadata.
  const char* cap_meaning;
  Handler handler;
};

inline lie::LieAlgebra checked_lie(const json& j) {
  auto l = io::lie_from_json(j);
  if (auto r = lie::check_antisymmetry(l); !r.ok) throw LawViolation(r.message, r.triple);
  if (auto r = lie::check_jacobi(l); !r.ok) throw LawViolation(r.message, r.triple);
  return l;
}

inline hochschild::AssociativeAlgebra checked_algebra(const json& j) {
  auto a = io::algebra_from_json(j);
  if (auto r = hochschild::check_algebra(a); !r.ok) throw LawViolation(r.message, r.triple);
  return a;
}

inline std::size_t optional_size(const json& in, const std::string& key, std::size_t fallback) {
  return in.contains(key) ? io::size_field(in, key) : fallback;
}

inline int positive_int(const json& in, const std::string& key, int fallback, int minimum) {
  const int v = in.contains(key) ? io::int_field(in, key) : fallback;
  if (v < minimum) throw MalformedInput("\"" + key + "\" must be >= " + std::to_string(minimum));
  return v;
}

inline void require_at_most(std::size_t value, std::size_t cap, const std::string& what) {
  if (value > cap)
    throw CapExceeded(what + " " + std::to_string(value) + " above the cap " + std::to_string(cap));
}

inline Result lie_cohomology(const Context& c) {
  const auto l = checked_lie(io::field(c.input, "lie"));
  require_at_most(ipow(2, l.dim()), c.cap, "Chevalley-Eilenberg total dimension");
  std::size_t lo = 0, hi = l.dim();
  if (c.input.contains("degrees")) {
    const json& d = c.input.at("degrees");
    if (!d.is_array() || d.size() != 2) throw MalformedInput("\"degrees\" must be [lo, hi]");
    lo = io::index_from_json(d[0], l.dim() + 1, "degree");
    hi = io::index_from_json(d[1], l.dim() + 1, "degree");
    if (lo > hi) throw MalformedInput("\"degrees\" must satisfy lo <= hi");
  }
  const auto complex = lie::ce_complex(l);
  json dims = json::array();
  for (std::size_t k = lo; k <= hi; ++k) dims.push_back(complex.cohomology_dim(static_cast<int>(k)));
  Result r;
  r.result = {{"algebra", l.name()}, {"dim", l.dim()}, {"degrees", {lo, hi}}, {"dims", dims}};
  r.provenance.push_back("H^n(g, k) of the Chevalley-Eilenberg complex on wedge^n g^*");
  r.provenance.push_back("for simple g: H^1 = H^2 = 0 and H^3 = (wedge^3 g)^G = k (Whitehead)");
  return r;
}

inline Result invariants(const Context& c) {
  const auto l = checked_lie(io::field(c.input, "lie"));
  const std::string kind = c.input.value("kind", std::string("wedge"));
  if (kind != "wedge" && kind != "sym") throw MalformedInput("\"kind\" must be \"wedge\" or \"sym\"");
  const auto pk = kind == "wedge" ? lie::PowerKind::Wedge : lie::PowerKind::Sym;
  std::vector<std::size_t> degrees;
  if (c.input.contains("degree")) degrees.push_back(io::size_field(c.input, "degree"));
  if (c.input.contains("degrees")) {
    if (!c.input.at("degrees").is_array()) throw MalformedInput("\"degrees\" must be an array");
    for (const auto& d : c.input.at("degrees")) degrees.push_back(io::index_from_json(d, 1000, "degree"));
  }
  if (degrees.empty()) throw MalformedInput("give \"degree\" or \"degrees\"");
  json table = json::array();
  for (auto k : degrees) {
    std::size_t dim = 0;
    if (pk == lie::PowerKind::Sym || k <= l.dim()) {
      const std::size_t size = pk == lie::PowerKind::Wedge ? binomial(l.dim(), k)
                                                           : (k == 0 ? 1 : binomial(l.dim() + k - 1, k));
      require_at_most(size, c.cap, "representation dimension");
      dim = lie::invariant_dim(lie::power_rep(l, pk, k));
    }
    table.push_back({{"degree", k}, {"dim", dim}});
  }
  Result r;
  r.result = {{"algebra", l.name()}, {"kind", kind}, {"table", table}};
  r.provenance.push_back("infinitesimal invariants: joint kernel of the action of g");
  r.provenance.push_back("(Sym^2 g)^G = k for simple g; (wedge^4 g)^G = 0 for sl3");
  return r;
}

inline Result hochschild_job(const Context& c) {
  const auto a = checked_algebra(io::field(c.input, "algebra"));
  const std::size_t max_degree = optional_size(c.input, "max_degree", 3);
  const auto complex = hochschild::hochschild_complex(a, max_degree + 1, c.cap);
  json hh = json::array();
  for (std::size_t n = 0; n <= max_degree; ++n) hh.push_back(complex.cohomology_dim(static_cast<int>(n)));
  Result r;
  r.result = {{"algebra", a.name()}, {"dim", a.dim()}, {"hh", hh}};
  if (max_degree >= 2) {
    json basis = json::array();
    for (const auto& b : hochschild::first_order_deformations(a, c.cap)) basis.push_back(io::to_json(b.values));
    r.result["first_order_deformations"] = basis;
    r.provenance.push_back("first-order deformations are classified by HH^2(A)");
  }
  if (max_degree >= 3) {
    const auto o = hochschild::obstruction_space_vanishes(a, c.cap);
    r.result["obstruction"] = {{"hh3", o.hh3}, {"vanishes", o.vanishes}, {"statement", o.statement}};
    r.provenance.push_back("obstructions to extending deformations live in HH^3(A)");
  }
  if (c.input.contains("star_product")) {
    const auto s = io::star_from_json(c.input.at("star_product"), a.dim());
    const auto check = hochschild::star_associativity_check(a, s);
    json out{{"associative", check.ok}, {"message", check.message}};
    if (!check.ok) {
      out["failing_order"] = check.failing_order;
      out["triple"] = check.triple;
    }
    r.result["star_product"] = out;
    r.provenance.push_back("f * g = fg + hbar B_1(f, g) + ...: associative mod hbar^2 iff B_1 is a 2-cocycle");
  }
  return r;
}

inline Result dy_job(const Context& c) {
  Result r;
  if (c.input.contains("lie")) {
    const auto l = checked_lie(c.input.at("lie"));
    const std::size_t top = optional_size(c.input, "max_arity", l.dim());
    require_at_most(top, l.dim(), "arity");
    json dims = json::array();
    for (std::size_t n = 0; n <= top; ++n) {
      require_at_most(binomial(l.dim(), n), c.cap, "wedge power dimension");
      dims.push_back(dy::rep_g_dy_dim(l, n));
    }
    r.result = {{"category", "Rep(" + l.name() + ")"}, {"cohomology", dims}};
    r.provenance.push_back("H^n(DY(Rep G)) = (wedge^n g)^G for reductive G");
    return r;
  }
  const auto h = io::hopf_from_json(io::field(c.input, "hopf"));
  if (auto check = hopf::check_hopf(h); !check.ok) throw InvariantViolation(check.message);
  const std::size_t top = optional_size(c.input, "max_arity", 3);
  const auto complex = dy::dy_complex(h, top + 1, c.cap);
  json dims = json::array(), coh = json::array();
  for (std::size_t n = 0; n <= top + 1; ++n) dims.push_back(complex.dim(static_cast<int>(n)));
  for (std::size_t n = 0; n <= top; ++n) coh.push_back(complex.cohomology_dim(static_cast<int>(n)));
  r.result = {{"hopf", h.name()},   {"dim", h.dim()},           {"cochain_dims", dims},
              {"cohomology", coh}, {"d_squared_zero", true}};
  r.provenance.push_back("DY^n = centralizer of Delta^(n)(H) in H^(x)n, alternating coface differential");
  return r;
}

inline json polynomials_to_json(const PolyVector& v) {
  json out = json::array();
  for (const auto& p : v) out.push_back(p.to_string());
  return out;
}

inline Result mc_job(const Context& c) {
  const auto g = io::dgla_from_json(io::field(c.input, "dgla"));
  const int m = positive_int(c.input, "order", 2, 1);
  require_at_most(static_cast<std::size_t>(m), c.cap, "order");
  const auto s = mc::solve_mc(g, artin::ArtinMonomialAlgebra(m));
  json family = json::array(), residual = json::array();
  for (const auto& a : s.family) family.push_back(polynomials_to_json(a));
  for (const auto& p : s.residual_system) residual.push_back(p.to_string());
  Result r;
  r.result = {{"dgla", g.name()},
              {"ring", "k[h]/h^" + std::to_string(m)},
              {"cohomology", {mc::dgla_cohomology_dim(g, 0), mc::dgla_cohomology_dim(g, 1), mc::dgla_cohomology_dim(g, 2)}},
              {"status", mc::to_string(s.status)},
              {"critical_order", s.critical_order},
              {"per_order_dims", s.per_order_dims},
              {"moduli_dimension", s.moduli_dimension()},
              {"parameter_order", s.parameter_order},
              {"free_parameters", s.free_parameters},
              {"family", family},
              {"residual_system", residual}};
  r.provenance.push_back("d alpha + 1/2 [alpha, alpha] = 0 solved order by order modulo gauge");
  r.provenance.push_back("obstructions to extending classes live in H^2");
  return r;
}

inline json tower_report_json(const tower::TowerReport& t) {
  json orders = json::array(), pi0 = json::array(), pi1 = json::array();
  for (const auto& p : t.orders) {
    orders.push_back(io::to_json(p));
    pi0.push_back(io::to_json(p.pi0()));
    pi1.push_back(io::to_json(p.pi1()));
  }
  json out{{"tangent", io::to_json(t.tangent)},
           {"orders", orders},
           {"pi0", pi0},
           {"pi1", pi1},
           {"lim1", t.lim1},
           {"verdict", {{"label", t.verdict.label()}, {"failed", t.verdict.failed}, {"model", t.verdict.model}}}};
  if (t.limit)
    out["limit"] = io::to_json(*t.limit);
  else
    out["limit_refusal"] = t.limit_refusal;
  return out;
}

inline Result tower_job(const Context& c) {
  const auto t = io::tangent_from_json(io::field(c.input, "tangent"));
  const int m = positive_int(c.input, "order", 6, 2);
  require_at_most(static_cast<std::size_t>(m), c.cap, "order");
  Result r;
  r.result = tower_report_json(tower::run_tower(t, m));
  r.provenance.push_back("X(k[x]/x^{m+1}) is the fiber of X(k[x]/x^m) -> X(k + k[1]); dimensions from the long exact sequence");
  r.provenance.push_back("k[[x]] via the Milnor sequence; stream lists one pi_0 increment per order");
  return r;
}

inline Result poisson_job(const Context& c) {
  const auto l = checked_lie(io::field(c.input, "lie"));
  const int n = positive_int(c.input, "n", 2, 1);
  const std::size_t w = optional_size(c.input, "max_weight", poisson::default_tangent_weight(n));
  const auto table = poisson::polyvector_dims(l, n, w, c.cap);
  json rows = json::array();
  for (std::size_t k = 0; k < table.dims.size(); ++k)
    rows.push_back({{"weight", k}, {"degree", table.degree(k)}, {"dim", table.dims[k]}});
  Result r;
  r.result = {{"algebra", l.name()},
              {"n", n},
              {"parity", poisson::odd_shift(n) ? "wedge" : "sym"},
              {"polyvectors", rows},
              {"pi0", poisson::poisson_pi0(l, n, c.cap)},
              {"tangent", io::to_json(poisson::induced_tangent(l, n, w, c.cap))}};
  r.provenance.push_back("Pol(BG, n) = Sym(g[-n])^G with weight w in degree n w");
  r.provenance.push_back("pi_0 Poiss(BG, n): (wedge^3 g)^G for n = 1, (Sym^2 g)^G for n = 2, 0 otherwise");
  r.provenance.push_back("Poisson structures read as deformations through E_{n+1} = P_{n+1}, taken as the identity on dimensions");
  return r;
}

inline Result repg_report(const Context& c) {
  const auto l = checked_lie(io::field(c.input, "lie"));
  const int n = positive_int(c.input, "n", 2, 1);
  const int m = positive_int(c.input, "order", 6, 2);
  require_at_most(static_cast<std::size_t>(m), 4096, "order");
  const auto t = poisson::induced_tangent(l, n, 0, c.cap);
  Result r;
  r.result = tower_report_json(tower::run_tower(t, m));
  r.result["algebra"] = l.name();
  r.result["n"] = n;
  r.result["poisson_pi0"] = poisson::poisson_pi0(l, n, c.cap);
  r.provenance.push_back("tangent data k + fib(Sym(g[-n])^G -> k) at level N = n + 2");
  r.provenance.push_back("sl2, n = 2: pi_0 over k[x]/x^{m+1} is m, the limit is a product of copies of k");
  r.provenance.push_back("h^N = k, h^{N-1} = h^{N+1} = 0 give a unique deformation up to Aut(k[[x]])");
  return r;
}

inline const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{
      {"lie-cohomology", {4096, "Chevalley-Eilenberg total dimension 2^d", lie_cohomology}},
      {"invariants", {20000, "dimension of the power representation", invariants}},
      {"hochschild", {hochschild::kDefaultArityCap, "Hochschild cochain arity", hochschild_job}},
      {"dy", {dy::kDefaultCap, "dimension d^n of H^(x)n", dy_job}},
      {"mc", {16, "order m of k[h]/h^m", mc_job}},
      {"tower", {256, "tower order m of k[x]/x^m", tower_job}},
      {"poisson", {poisson::kDefaultBasisCap, "monomials in one weight piece", poisson_job}},
      {"repg-report", {poisson::kDefaultBasisCap, "monomials in one weight piece", repg_report}},
  };
  return table;
}

inline std::optional<std::size_t> env_cap() {
  const char* v = std::getenv("DEFORMA_CAP");
  if (!v || !*v) return std::nullopt;
  const std::string s(v);
  if (s.find_first_not_of("0123456789") != std::string::npos)
    throw MalformedInput("DEFORMA_CAP must be a positive integer");
  const auto cap = std::stoull(s);
  if (cap == 0) throw MalformedInput("DEFORMA_CAP must be positive");
  return static_cast<std::size_t>(cap);
}

inline const char* kind_name(Error::Kind k) {
  switch (k) {
    case Error::Kind::Domain: return "domain_error";
    case Error::Kind::Malformed: return "malformed_input";
    case Error::Kind::Invariant: return "invariant_violation";
    case Error::Kind::Cap: return "cap_exceeded";
  }
  return "error";
}

inline int exit_code(Error::Kind k) {
  switch (k) {
    case Error::Kind::Domain:
    case Error::Kind::Malformed: return kMalformed;
    case Error::Kind::Invariant: return kInvariant;
    case Error::Kind::Cap: return kCap;
  }
  return kInternal;
}

inline Outcome fail(int code, const std::string& kind, const std::string& message) {
  Outcome o;
  o.exit_code = code;
  o.diagnostic = {{"error", kind}, {"message", message}};
  return o;
}

}  // namespace detail

inline std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& [name, c] : detail::commands()) out.push_back(name);
  return out;
}

/// Runs one job. The echoed input is the payload with the effective order
/// and cap filled in; the digest hashes its compact serialization.
inline Outcome run(const JobSpec& job) {
  try {
    const auto it = detail::commands().find(job.command);
    if (it == detail::commands().end()) throw MalformedInput("unknown command \"" + job.command + "\"");
    if (!job.input.is_object()) throw MalformedInput("input payload must be a JSON object");
    detail::Context ctx;
    ctx.input = job.input;
    if (job.order) ctx.input["order"] = *job.order;
    std::size_t cap = it->second.default_cap;
    if (auto e = detail::env_cap()) cap = *e;
    if (ctx.input.contains("cap")) cap = io::size_field(ctx.input, "cap");
    if (job.cap) cap = *job.cap;
    if (cap == 0) throw MalformedInput("cap must be positive");
    ctx.input["cap"] = cap;
    ctx.cap = cap;
    auto r = it->second.handler(ctx);
    Outcome o;
    o.report = {{"command", job.command},
                {"input", ctx.input},
                {"input_digest", io::fnv1a64(ctx.input.dump())},
                {"result", std::move(r.result)},
                {"provenance", std::move(r.provenance)},
                {"metadata", {{"tool", "deforma"}, {"version", kVersion}, {"cap_bounds", it->second.cap_meaning}}}};
    return o;
  } catch (const LawViolation& e) {
    auto o = detail::fail(kInvariant, "invariant_violation", e.what());
    o.diagnostic["triple"] = e.triple();
    return o;
  } catch (const Error& e) {
    return detail::fail(detail::exit_code(e.kind()), detail::kind_name(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return detail::fail(kMalformed, "malformed_input", e.what());
  } catch (const std::exception& e) {
    return detail::fail(kInternal, "internal_error", e.what());
  }
}

/// Parses --input: inline JSON when it starts with '{', otherwise a file path.
inline json read_payload(const std::string& text, const std::function<std::optional<std::string>(const std::string&)>& read_file) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw MalformedInput(std::string("input is not valid JSON: ") + e.what());
    }
  }
  const auto contents = read_file(text);
  if (!contents) throw MalformedInput("cannot read input file \"" + text + "\"");
  try {
    return json::parse(*contents);
  } catch (const json::parse_error& e) {
    throw MalformedInput("input file \"" + text + "\" is not valid JSON: " + e.what());
  }
}

/// Human-readable rendering: one line per result field.
inline std::string render_table(const json& report) {
  std::ostringstream os;
  os << "command: " << report.at("command").get<std::string>() << "\n";
  os << "input_digest: " << report.at("input_digest").get<std::string>() << "\n";
  for (const auto& [key, value] : report.at("result").items())
    os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  for (const auto& note : report.at("provenance")) os << "note: " << note.get<std::string>() << "\n";
  return os.str();
}

}  // namespace deforma::cli
