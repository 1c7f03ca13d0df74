#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "deforma/cli.hpp"

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace deforma;
  CLI::App app{"deforma: exact deformation-theory workbench"};
  app.set_version_flag("--version", std::string(cli::kVersion));

  std::string command, input, out_path, format = "json", builtin;
  std::optional<std::size_t> cap;
  std::optional<int> order;
  app.add_option("command", command, "Job to run")->required()->check(CLI::IsMember(cli::command_names()));
  app.add_option("--input", input, "Payload: inline JSON object or path to a JSON file");
  app.add_option("--builtin", builtin, "Built-in object name for the command's main input (e.g. sl2, m2, kC2, toy)");
  app.add_option("--cap", cap, "Size cap (overrides DEFORMA_CAP)")->check(CLI::PositiveNumber);
  app.add_option("--order", order, "Truncation order");
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kMalformed;
  }

  cli::JobSpec job;
  job.command = command;
  job.cap = cap;
  job.order = order;
  try {
    if (!input.empty()) job.input = cli::read_payload(input, read_file);
    if (!builtin.empty()) {
      static const std::map<std::string, std::string> primary{
          {"lie-cohomology", "lie"}, {"invariants", "lie"}, {"hochschild", "algebra"}, {"dy", "hopf"},
          {"mc", "dgla"},            {"tower", "tangent"},  {"poisson", "lie"},        {"repg-report", "lie"}};
      job.input[primary.at(command)] = builtin;
    }
  } catch (const Error& e) {
    std::cerr << nlohmann::json{{"error", "malformed_input"}, {"message", e.what()}}.dump() << "\n";
    return cli::kMalformed;
  }

  const auto outcome = cli::run(job);
  if (outcome.exit_code != cli::kOk) {
    std::cerr << outcome.diagnostic.dump() << "\n";
    return outcome.exit_code;
  }
  const std::string text = format == "table" ? cli::render_table(outcome.report) : outcome.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << nlohmann::json{{"error", "malformed_input"}, {"message", "cannot write " + out_path}}.dump() << "\n";
      return cli::kMalformed;
    }
    out << text;
  }
  return cli::kOk;
}
