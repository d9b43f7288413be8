// Command line front end: scenario-driven verification suites, convergence
// sweeps, and the quick structural selftest.
//
//   cliffcauchy verify <scenario.json> [--out report.json] [--jobs N]
//   cliffcauchy sweep  <scenario.json> --orders 8,16,24,32 [--out table.csv]
//   cliffcauchy selftest
//
// Exit codes: 0 all checks pass, 1 at least one failed, 2 configuration error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cliffcauchy/scenario.hpp"

namespace {

int write_or_print(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload << std::endl;
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    return 2;
  }
  out << payload << std::endl;
  return 0;
}

void print_summary(const cliffcauchy::SuiteResult& result) {
  for (const auto& rep : result.reports) {
    std::printf("%-6s %-40s max residual %.3e\n", rep.pass ? "[PASS]" : "[FAIL]",
                rep.check.c_str(), rep.max_residual());
  }
  std::printf("%s: %s\n", result.scenario.c_str(), result.pass ? "PASS" : "FAIL");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary-integral verification toolkit for monogenic function theories"};
  app.require_subcommand(1);

  std::string scenario_path, out_path;
  int jobs = 0;
  std::vector<int> orders;

  auto* verify = app.add_subcommand("verify", "run a scenario's verification checks");
  verify->add_option("scenario", scenario_path, "scenario JSON file")->required();
  verify->add_option("--out", out_path, "write the JSON report here");
  verify->add_option("--jobs", jobs, "worker pool size (default: available parallelism)");

  auto* sweep = app.add_subcommand("sweep", "residual-vs-order table for a scenario");
  sweep->add_option("scenario", scenario_path, "scenario JSON file")->required();
  sweep->add_option("--orders", orders, "quadrature orders to sweep")
      ->delimiter(',')
      ->required();
  sweep->add_option("--out", out_path, "write the CSV table here");
  sweep->add_option("--jobs", jobs, "worker pool size");

  auto* selftest = app.add_subcommand("selftest", "algebra and backend-agreement invariants");

  CLI11_PARSE(app, argc, argv);

  try {
    if (selftest->parsed()) {
      cliffcauchy::SuiteResult result = cliffcauchy::run_selftest();
      print_summary(result);
      return result.pass ? 0 : 1;
    }
    if (verify->parsed()) {
      cliffcauchy::Scenario sc = cliffcauchy::Scenario::parse_file(scenario_path);
      cliffcauchy::SuiteResult result = cliffcauchy::run_verify(sc, jobs);
      print_summary(result);
      if (!out_path.empty()) {
        int rc = write_or_print(out_path, result.to_json().dump(2));
        if (rc != 0) return rc;
      }
      return result.pass ? 0 : 1;
    }
    if (sweep->parsed()) {
      cliffcauchy::Scenario sc = cliffcauchy::Scenario::parse_file(scenario_path);
      std::string csv = cliffcauchy::run_sweep_csv(sc, orders, jobs);
      return write_or_print(out_path, csv);
    }
  } catch (const cliffcauchy::ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
