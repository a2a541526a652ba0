// Exercises the shared library through ccons.h only.

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "ccons/ccons.h"

using nlohmann::json;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(CCONS_FIXTURE_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ccons_matrix_set* load(const std::string& name) {
  ccons_matrix_set* set = nullptr;
  REQUIRE(ccons_matrix_set_from_json(read_fixture(name).c_str(), &set) == CCONS_OK);
  return set;
}

json take_json(char* s) {
  json out = json::parse(s);
  ccons_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("C API: load and inspect") {
  ccons_matrix_set* set = load("block_diagonal.json");
  int n = 0;
  int count = 0;
  CHECK(ccons_matrix_set_dimension(set, &n) == CCONS_OK);
  CHECK(ccons_matrix_set_count(set, &count) == CCONS_OK);
  CHECK(n == 4);
  CHECK(count == 2);

  char* report = nullptr;
  REQUIRE(ccons_assumption_report(set, &report) == CCONS_OK);
  const json r = take_json(report);
  CHECK(r["regime"] == "A123");
  ccons_matrix_set_free(set);
}

TEST_CASE("C API: errors carry codes and messages") {
  ccons_matrix_set* set = nullptr;
  CHECK(ccons_matrix_set_from_json("{", &set) == CCONS_ERR_PARSE);
  CHECK(set == nullptr);
  CHECK(std::strstr(ccons_last_error(), "malformed") != nullptr);
  CHECK(ccons_matrix_set_from_json(read_fixture("row_sum_violation.json").c_str(), &set) ==
        CCONS_ERR_ROW_SUM_VIOLATION);
  CHECK(std::strstr(ccons_last_error(), "'bad'") != nullptr);
  CHECK(ccons_matrix_set_from_json(nullptr, &set) == CCONS_ERR_INVALID_ARGUMENT);
  CHECK(std::string(ccons_status_name(CCONS_ERR_UNKNOWN_MATRIX_NAME)) == "UnknownMatrixName");
  CHECK(std::string(ccons_status_name(CCONS_OK)) == "OK");
  ccons_matrix_set_free(nullptr);
}

TEST_CASE("C API: decide and verify") {
  ccons_matrix_set* set = load("identity.json");
  ccons_decision* d = nullptr;
  REQUIRE(ccons_decide(set, nullptr, &d) == CCONS_OK);
  ccons_verdict v;
  CHECK(ccons_decision_verdict(d, &v) == CCONS_OK);
  CHECK(v == CCONS_NOT_CONSENSUS_SET);
  size_t len = 0;
  CHECK(ccons_decision_witness_length(d, &len) == CCONS_OK);
  CHECK(len == 1);

  char* wtext = nullptr;
  REQUIRE(ccons_decision_witness_json(d, &wtext) == CCONS_OK);
  int valid = 0;
  char* report = nullptr;
  CHECK(ccons_verify_witness(set, wtext, &valid, &report) == CCONS_OK);
  CHECK(valid == 1);
  CHECK(take_json(report)["condition"] == "none");

  json w = json::parse(wtext);
  ccons_string_free(wtext);
  w["cycle"][0]["s_prime"] = {0, 1};
  CHECK(ccons_verify_witness(set, w.dump().c_str(), &valid, &report) == CCONS_OK);
  CHECK(valid == 0);
  CHECK(take_json(report)["condition"] == "(i)");

  w["cycle"][0]["matrix"] = "missing";
  CHECK(ccons_verify_witness(set, w.dump().c_str(), &valid, nullptr) == CCONS_ERR_UNKNOWN_MATRIX_NAME);

  char* dj = nullptr;
  REQUIRE(ccons_decision_json(d, &dj) == CCONS_OK);
  CHECK(take_json(dj)["verdict"] == "NotConsensusSet");
  ccons_decision_free(d);
  ccons_matrix_set_free(set);

  set = load("uniform.json");
  REQUIRE(ccons_decide(set, nullptr, &d) == CCONS_OK);
  CHECK(ccons_decision_verdict(d, &v) == CCONS_OK);
  CHECK(v == CCONS_CONSENSUS_SET);
  CHECK(ccons_decision_witness_length(d, &len) == CCONS_ERR_NO_WITNESS);
  ccons_decision_free(d);

  ccons_decide_options opts;
  ccons_decide_options_init(&opts);
  CHECK(opts.state_budget == 5000000);
  CHECK(opts.dimension_cap == 20);
  opts.necessary_only = 1;
  REQUIRE(ccons_decide(set, &opts, &d) == CCONS_OK);
  CHECK(ccons_decision_verdict(d, &v) == CCONS_OK);
  CHECK(v == CCONS_NECESSARY_ONLY_PASSED);
  ccons_decision_free(d);
  ccons_matrix_set_free(set);
}

TEST_CASE("C API: simulate") {
  ccons_matrix_set* set = load("uniform.json");
  ccons_simulate_options opts;
  ccons_simulate_options_init(&opts);
  const double x0[] = {0.0, 1.0};
  opts.x0 = x0;
  opts.x0_length = 2;
  char* csv = nullptr;
  char* profile = nullptr;
  REQUIRE(ccons_simulate(set, &opts, &csv, &profile) == CCONS_OK);
  CHECK(std::string(csv).rfind("t,matrix,spread,x_0,x_1\n0,,1,0,1\n1,U,0,0.5,0.5\n", 0) == 0);
  const json p = take_json(profile);
  CHECK(p["converged"] == true);
  CHECK(p["per_cluster_values"][0] == 0.5);
  ccons_string_free(csv);

  opts.policy = CCONS_POLICY_WITNESS;
  CHECK(ccons_simulate(set, &opts, nullptr, nullptr) == CCONS_ERR_INVALID_POLICY);

  opts.policy = CCONS_POLICY_FIXED;
  const char* seq[] = {"U", "V"};
  opts.sequence = seq;
  opts.sequence_length = 2;
  opts.horizon = 2;
  CHECK(ccons_simulate(set, &opts, nullptr, nullptr) == CCONS_ERR_UNKNOWN_MATRIX_NAME);
  ccons_matrix_set_free(set);
}

TEST_CASE("C API: oracle") {
  ccons_oracle_options opts;
  ccons_oracle_options_init(&opts);
  opts.cases = 10;
  char* summary = nullptr;
  int disagreements = -1;
  REQUIRE(ccons_oracle_run(&opts, &summary, &disagreements) == CCONS_OK);
  CHECK(disagreements == 0);
  const json s = take_json(summary);
  CHECK(s["cases"].size() == 10);

  opts.n = 6;
  CHECK(ccons_oracle_run(&opts, nullptr, nullptr) == CCONS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("C API: graph export") {
  ccons_matrix_set* set = load("coupled_spanning.json");
  char* dot = nullptr;
  REQUIRE(ccons_graph_dot(set, "P", 0, &dot) == CCONS_OK);
  CHECK(std::string(dot).find("0 -> 2;") != std::string::npos);
  ccons_string_free(dot);
  REQUIRE(ccons_graph_dot(set, "P", 1, &dot) == CCONS_OK);
  CHECK(std::string(dot).find("peripheries=2") != std::string::npos);
  ccons_string_free(dot);
  CHECK(ccons_graph_dot(set, "Q", 1, &dot) == CCONS_ERR_UNKNOWN_MATRIX_NAME);
  ccons_matrix_set_free(set);
}
