#pragma once

// Scenario-driven verification suites: parse a scenario file, dispatch the
// requested checks to a worker pool, and emit deterministic JSON reports and
// CSV sweep tables.

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliffcauchy/cif.hpp"

namespace cliffcauchy {

struct ScenarioError : std::runtime_error {
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct Scenario {
  std::string name = "scenario";
  int m = 4;
  SurfaceDomain dom;
  std::vector<int> orders = {24};
  std::vector<std::string> checks;
  std::map<std::string, double> tolerance_overrides;
  std::uint64_t seed = 20240101ULL;

  [[nodiscard]] int q() const { return orders.front(); }
  static Scenario parse(const nlohmann::json& j);  // throws ScenarioError
  static Scenario parse_file(const std::string& path);
  [[nodiscard]] nlohmann::ordered_json to_json() const;
  [[nodiscard]] std::string digest() const;  // FNV-1a over the canonical form
};

struct SuiteResult {
  std::string scenario;
  std::string scenario_digest;
  std::vector<VerificationReport> reports;
  bool pass = false;

  [[nodiscard]] nlohmann::ordered_json to_json(bool include_runtime = true) const;
};

using CheckFn = std::function<std::vector<VerificationReport>(const Scenario&)>;

/// Name -> implementation for every scenario-selectable check.
const std::map<std::string, CheckFn>& check_registry();

/// Runs the scenario's checks on a pool of `jobs` workers; report order follows
/// the scenario regardless of completion order.
SuiteResult run_verify(const Scenario& scenario, int jobs = 0);

/// Residual-vs-order table; one row per (check, q), plus monotonicity flags and
/// principal-value extrapolation diagnostics where applicable.
std::string run_sweep_csv(const Scenario& scenario, const std::vector<int>& orders,
                          int jobs = 0);

/// Algebra / structure / backend-agreement invariants only; no quadrature-heavy
/// checks.  Includes the corrupted-constant mutation test.
SuiteResult run_selftest();

// Logging, controlled by CLIFFCAUCHY_LOG in {quiet, info, debug}.
enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };
LogLevel log_level();
void log_info(const std::string& line);
void log_debug(const std::string& line);

}  // namespace cliffcauchy
