#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "deforma/cli.hpp"

using namespace deforma;
using cli::JobSpec;
using nlohmann::json;

namespace {

struct GoldenCase {
  std::string command, name;
  json input;
  std::optional<int> order;
};

std::vector<GoldenCase> golden_cases() {
  return {
      {"lie-cohomology", "sl2", {{"lie", "sl2"}}, {}},
      {"lie-cohomology", "sl3", {{"lie", "sl3"}}, {}},
      {"invariants", "sl3_wedge", {{"lie", "sl3"}, {"kind", "wedge"}, {"degrees", {2, 3, 4}}}, {}},
      {"invariants", "sl2_sym", {{"lie", "sl2"}, {"kind", "sym"}, {"degrees", {1, 2, 3, 4}}}, {}},
      {"hochschild", "m2", {{"algebra", "m2"}}, {}},
      {"hochschild",
       "dual_numbers_star",
       {{"algebra", "dual_numbers"}, {"star_product", {{"order", 2}, {"maps", {{{0, 1, 0, "1"}}}}}}},
       {}},
      {"dy", "kC2", {{"hopf", "kC2"}, {"max_arity", 2}}, {}},
      {"dy", "rep_sl2", {{"lie", "sl2"}}, {}},
      {"mc", "toy_order3", {{"dgla", "toy"}}, 3},
      {"tower", "h4_h5", {{"tangent", {{"level", 4}, {"h", {{"4", 1}, {"5", 1}}}}}}, 4},
      {"poisson", "sl2_n2", {{"lie", "sl2"}, {"n", 2}}, {}},
      {"repg-report", "sl2_n2_order6", {{"lie", "sl2"}, {"n", 2}}, 6},
  };
}

json without_metadata(json report) {
  report.erase("metadata");
  return report;
}

std::filesystem::path golden_path(const GoldenCase& c) {
  return std::filesystem::path(DEFORMA_GOLDEN_DIR) / c.command / (c.name + ".json");
}

json run_ok(const JobSpec& job) {
  const auto o = cli::run(job);
  EXPECT_EQ(o.exit_code, 0) << o.diagnostic.dump();
  return o.report;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(DEFORMA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, GoldenReports) {
  const bool update = std::getenv("DEFORMA_UPDATE_GOLDEN") != nullptr;
  for (const auto& c : golden_cases()) {
    const json report = without_metadata(run_ok({c.command, c.input, {}, c.order}));
    const auto path = golden_path(c);
    if (update) {
      std::filesystem::create_directories(path.parent_path());
      std::ofstream(path) << report.dump(2) << "\n";
      continue;
    }
    std::ifstream in(path);
    ASSERT_TRUE(in) << "missing golden file " << path;
    EXPECT_EQ(report, json::parse(in)) << path;
  }
}

TEST(Cli, ReportsMatchLibraryCalls) {
  const auto sl2 = lie::LieAlgebra::sl2();
  auto r = run_ok({"lie-cohomology", {{"lie", "sl2"}}, {}, {}});
  std::vector<std::size_t> expect;
  for (int k = 0; k <= 3; ++k) expect.push_back(lie::ce_cohomology(sl2, k));
  EXPECT_EQ(r["result"]["dims"].get<std::vector<std::size_t>>(), expect);
  EXPECT_EQ(expect, (std::vector<std::size_t>{1, 0, 0, 1}));

  r = run_ok({"mc", {{"dgla", "toy"}}, {}, 2});
  EXPECT_EQ(r["result"]["moduli_dimension"],
            mc::solve_mc(mc::DGLA::toy_square(), artin::ArtinMonomialAlgebra(2)).moduli_dimension());

  r = run_ok({"dy", {{"hopf", "sweedler4"}, {"max_arity", 2}}, {}, {}});
  for (std::size_t n = 0; n <= 2; ++n)
    EXPECT_EQ(r["result"]["cohomology"][n], dy::dy_cohomology(hopf::HopfAlgebra::sweedler(), n));

  r = run_ok({"poisson", {{"lie", "sl2"}, {"n", 1}}, {}, {}});
  EXPECT_EQ(r["result"]["pi0"], poisson::poisson_pi0(sl2, 1));

  r = run_ok({"hochschild", {{"algebra", "dual_numbers"}}, {}, {}});
  EXPECT_EQ(r["result"]["first_order_deformations"].size(),
            hochschild::first_order_deformations(hochschild::AssociativeAlgebra::dual_numbers()).size());
}

TEST(Cli, RepGReport) {
  const auto r = run_ok({"repg-report", {{"lie", "sl2"}, {"n", 2}}, {}, 6})["result"];
  EXPECT_EQ(r["pi0"], json({1, 2, 3, 4, 5}));
  EXPECT_EQ(r["pi1"], json({0, 0, 0, 0, 0}));
  EXPECT_EQ(r["verdict"]["label"], "UNIQUE");
  EXPECT_EQ(r["limit"]["stream"], json({1, 1, 1, 1, 1}));
}

TEST(Cli, NonJacobiTableExitsWithTriple) {
  // [e0, e1] = e2, [e1, e2] = e1 violates Jacobi on (0, 1, 2).
  const json bad{{"dim", 3}, {"brackets", {{0, 1, {{2, "1"}}}, {1, 2, {{1, "1"}}}}}};
  const auto o = cli::run({"invariants", {{"lie", bad}, {"degree", 1}}, {}, {}});
  EXPECT_EQ(o.exit_code, 3);
  EXPECT_EQ(o.diagnostic["triple"], json({0, 1, 2}));
  EXPECT_EQ(o.diagnostic["error"], "invariant_violation");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli::run({"no-such-command", json::object(), {}, {}}).exit_code, 2);
  EXPECT_EQ(cli::run({"lie-cohomology", json::object(), {}, {}}).exit_code, 2);
  EXPECT_EQ(cli::run({"lie-cohomology", {{"lie", "so5"}}, {}, {}}).exit_code, 2);
  EXPECT_EQ(cli::run({"lie-cohomology", {{"lie", {{"dim", 2}, {"brackets", {{0, 1, {{1, 0.5}}}}}}}}, {}, {}}).exit_code,
            2);
  EXPECT_EQ(cli::run({"tower", {{"tangent", {{"level", 1}}}}, {}, {}}).exit_code, 2);
  EXPECT_EQ(cli::run({"mc", {{"dgla", "toy"}}, {}, 0}).exit_code, 2);
  EXPECT_EQ(cli::run({"hochschild", {{"algebra", "m2"}}, 2, {}}).exit_code, 4);
  EXPECT_EQ(cli::run({"dy", {{"hopf", "kS3"}, {"max_arity", 4}}, {}, {}}).exit_code, 4);
  // e0 is declared the unit but e1 e0 = 0.
  const json broken{{"dim", 2}, {"unit", {"1", "0"}}, {"products", {{0, 0, {{0, "1"}}}, {1, 1, {{1, "1"}}}}}};
  EXPECT_EQ(cli::run({"hochschild", {{"algebra", broken}}, {}, {}}).exit_code, 3);
  // Not a group table, so the antipode axiom fails.
  const json bad_hopf{{"group_table", {{0, 1}, {1, 1}}}};
  EXPECT_EQ(cli::run({"dy", {{"hopf", bad_hopf}}, {}, {}}).exit_code, 3);
}

TEST(Cli, CapPrecedence) {
  ::setenv("DEFORMA_CAP", "2", 1);
  EXPECT_EQ(cli::run({"hochschild", {{"algebra", "k"}}, {}, {}}).exit_code, 4);
  EXPECT_EQ(cli::run({"hochschild", {{"algebra", "k"}}, 4, {}}).exit_code, 0);
  ::setenv("DEFORMA_CAP", "abc", 1);
  EXPECT_EQ(cli::run({"hochschild", {{"algebra", "k"}}, {}, {}}).exit_code, 2);
  ::unsetenv("DEFORMA_CAP");
  const auto r = run_ok({"tower", {{"tangent", {{"level", 4}}}, {"cap", 8}}, {}, 6});
  EXPECT_EQ(r["input"]["cap"], 8);
  EXPECT_EQ(cli::run({"tower", {{"tangent", {{"level", 4}}}, {"cap", 8}}, {}, 9}).exit_code, 4);
}

TEST(Cli, DeterministicAndDigestRoundTrips) {
  for (const auto& c : golden_cases()) {
    const JobSpec job{c.command, c.input, {}, c.order};
    const json a = run_ok(job), b = run_ok(job);
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_EQ(a["input_digest"], io::fnv1a64(a["input"].dump()));
  }
  EXPECT_EQ(io::fnv1a64(""), "cbf29ce484222325");
  EXPECT_EQ(io::fnv1a64("a"), "af63dc4c8601ec8c");
}

TEST(Cli, RationalsAreStrings) {
  const auto r = run_ok({"hochschild", {{"algebra", "dual_numbers"}}, {}, {}});
  for (const auto& b : r["result"]["first_order_deformations"])
    for (const auto& e : b["entries"]) EXPECT_TRUE(e[2].is_string());
  EXPECT_EQ(io::rational_from_json("-6/4"), Rational(-3, 2));
  EXPECT_THROW(io::rational_from_json(0.5), MalformedInput);
}

TEST(Cli, CustomInputsRoundTrip) {
  // sl2 written out by hand in the basis (h, e, f).
  const json sl2{{"dim", 3}, {"brackets", {{0, 1, {{1, "2"}}}, {0, 2, {{2, "-2"}}}, {1, 2, {{0, "1"}}}}}};
  EXPECT_EQ(run_ok({"lie-cohomology", {{"lie", sl2}}, {}, {}})["result"]["dims"], json({1, 0, 0, 1}));
  // kC2 from its group table.
  const json c2{{"group_table", {{0, 1}, {1, 0}}}};
  EXPECT_EQ(run_ok({"dy", {{"hopf", c2}, {"max_arity", 1}}, {}, {}})["result"]["cohomology"],
            run_ok({"dy", {{"hopf", "kC2"}, {"max_arity", 1}}, {}, {}})["result"]["cohomology"]);
  // The [e, e] = f toy written as JSON.
  const json toy{{"lo", 0}, {"dims", {0, 1, 1}}, {"brackets", {{1, 0, 1, 0, {{0, "1"}}}}}};
  EXPECT_EQ(run_ok({"mc", {{"dgla", toy}}, {}, 3})["result"]["moduli_dimension"], 0);
  // Sweedler's algebra spelled out: basis 1, g, x, gx.
  const json h4{{"algebra",
                 {{"dim", 4},
                  {"unit", {"1", "0", "0", "0"}},
                  {"products",
                   {{0, 0, {{0, 1}}}, {0, 1, {{1, 1}}}, {0, 2, {{2, 1}}}, {0, 3, {{3, 1}}},
                    {1, 0, {{1, 1}}}, {1, 1, {{0, 1}}}, {1, 2, {{3, 1}}}, {1, 3, {{2, 1}}},
                    {2, 0, {{2, 1}}}, {2, 1, {{3, -1}}}, {3, 0, {{3, 1}}}, {3, 1, {{2, -1}}}}}}},
                {"coproduct",
                 {{0, {{0, 0, 1}}}, {1, {{1, 1, 1}}}, {2, {{2, 0, 1}, {1, 2, 1}}}, {3, {{3, 1, 1}, {0, 3, 1}}}}},
                {"counit", {1, 1, 0, 0}},
                {"antipode", {{0, {{0, 1}}}, {1, {{1, 1}}}, {2, {{3, -1}}}, {3, {{2, 1}}}}}};
  EXPECT_EQ(run_ok({"dy", {{"hopf", h4}, {"max_arity", 2}}, {}, {}})["result"]["cohomology"],
            run_ok({"dy", {{"hopf", "sweedler4"}, {"max_arity", 2}}, {}, {}})["result"]["cohomology"]);
}

TEST(CliBinary, ExitCodesAndOutput) {
  EXPECT_EQ(run_binary("lie-cohomology --builtin sl2"), 0);
  EXPECT_EQ(run_binary("lie-cohomology --builtin sl2 --format table"), 0);
  EXPECT_EQ(run_binary("lie-cohomology --input '{not json'"), 2);
  EXPECT_EQ(run_binary("lie-cohomology --input /nonexistent/file.json"), 2);
  EXPECT_EQ(run_binary("frobnicate"), 2);
  EXPECT_EQ(run_binary(
                "invariants --input '{\"lie\":{\"dim\":3,\"brackets\":[[0,1,[[2,\"1\"]]],[1,2,[[1,\"1\"]]]]},\"degree\":1}'"),
            3);
  EXPECT_EQ(run_binary("hochschild --builtin m2 --cap 2"), 4);
  EXPECT_EQ(run_binary("tower --input '{\"tangent\":{\"level\":4,\"h\":{\"4\":1}}}' --order 5"), 0);

  const auto out = std::filesystem::temp_directory_path() / "deforma_cli_test.json";
  ASSERT_EQ(run_binary("repg-report --input '{\"lie\":\"sl2\",\"n\":2}' --order 6 --out " + out.string()), 0);
  std::ifstream in(out);
  const json report = json::parse(in);
  EXPECT_EQ(report["result"]["pi0"], json({1, 2, 3, 4, 5}));
  std::filesystem::remove(out);
}
