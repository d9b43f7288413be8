#include <doctest.h>

#include "cliffcauchy/scenario.hpp"

using namespace cliffcauchy;

namespace {

nlohmann::json small_scenario() {
  return nlohmann::json{{"name", "small"},
                        {"dimension", {{"n", 2}}},
                        {"domain", {{"radius", 1.0}}},
                        {"orders", {16}},
                        {"checks", {"algebra_exactness", "lemma_interior"}},
                        {"seed", 4242}};
}

}  // namespace

TEST_CASE("scenario parsing and validation") {
  Scenario sc = Scenario::parse(small_scenario());
  CHECK(sc.m == 4);
  CHECK(sc.q() == 16);
  CHECK(sc.checks.size() == 2);

  auto bad_dim = small_scenario();
  bad_dim["dimension"] = {{"m", 5}};
  CHECK_THROWS_AS(Scenario::parse(bad_dim), ScenarioError);

  auto bad_check = small_scenario();
  bad_check["checks"] = {"no_such_check"};
  CHECK_THROWS_AS(Scenario::parse(bad_check), ScenarioError);

  auto bad_framework = small_scenario();
  bad_framework["dimension"] = {{"n", 1}};
  bad_framework["checks"] = {"cif_quaternionic"};
  CHECK_THROWS_AS(Scenario::parse(bad_framework), ScenarioError);

  auto bad_tol = small_scenario();
  bad_tol["tolerances"] = {{"item_i_one", -1.0}};
  CHECK_THROWS_AS(Scenario::parse(bad_tol), ScenarioError);
}

TEST_CASE("verify runs, reports in scenario order, deterministic json") {
  Scenario sc = Scenario::parse(small_scenario());
  SuiteResult a = run_verify(sc, 2);
  CHECK(a.pass);
  REQUIRE(a.reports.size() >= 3);  // algebra + two lemma points
  CHECK(a.reports.front().check == "algebra_exactness");
  CHECK(a.reports.back().check == "lemma_interior");

  // report schema
  auto j = a.reports.front().to_json();
  for (const char* key : {"check", "framework", "residuals", "q", "tolerances", "pass",
                          "runtime_ms"})
    CHECK(j.contains(key));

  // byte-identical reruns once runtime fields are stripped
  SuiteResult b = run_verify(sc, 1);
  CHECK(a.to_json(false).dump() == b.to_json(false).dump());
  CHECK(a.scenario_digest == b.scenario_digest);
}

TEST_CASE("tolerance overrides flip pass to fail") {
  Scenario sc = Scenario::parse(small_scenario());
  sc.tolerance_overrides["item_i_one"] = 1e-300;
  SuiteResult res = run_verify(sc, 1);
  CHECK_FALSE(res.pass);
}

TEST_CASE("selftest passes quickly") {
  SuiteResult res = run_selftest();
  CHECK(res.pass);
  bool saw_mutation = false;
  for (const auto& rep : res.reports)
    if (rep.check == "selftest_mutation") saw_mutation = rep.pass;
  CHECK(saw_mutation);
}

TEST_CASE("sweep csv has residual rows and monotonic flags") {
  Scenario sc = Scenario::parse(small_scenario());
  sc.checks = {"area"};
  std::string csv = run_sweep_csv(sc, {8, 16}, 1);
  CHECK(csv.find("check,param,value") == 0);
  CHECK(csv.find("area,q=8,") != std::string::npos);
  CHECK(csv.find("area,q=16,") != std::string::npos);
  CHECK(csv.find("area,monotonic,") != std::string::npos);
}

TEST_CASE("fixture dispatcher from json specs") {
  auto top = test_function({{"kind", "holomorphic-top"},
                            {"m", 4},
                            {"F", {{{"z", {1, 0}}, {"re", 1.0}}}}});
  CHECK(top->polynomial() != nullptr);

  auto cell = test_function({{"kind", "constant-in-part"}, {"m", 4}, {"r", 1}, {"s", 1}});
  CHECK(cell->dim() == 4);

  CHECK_THROWS_AS(test_function({{"kind", "nope"}}), std::invalid_argument);

  // the oracle still rejects bad osp candidates through the dispatcher
  CHECK_THROWS_AS(
      test_function({{"kind", "osp-candidate"},
                     {"m", 4},
                     {"r", 1},
                     {"s", 1},
                     {"V", {{{"zc", {1, 0}}, {"re", 1.0}}}}}),
      std::invalid_argument);
}
