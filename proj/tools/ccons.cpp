// ccons: command-line front end over the C interface.
//
// Exit codes: 0 positive, 2 inconclusive, 3 negative or invalid witness,
// 4 oracle disagreement, 1 operational error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccons/ccons.h"

namespace {

enum Exit { kPositive = 0, kError = 1, kInconclusive = 2, kNegative = 3, kDisagreement = 4 };

struct CliError {
  std::string message;
};

struct StringDeleter {
  void operator()(char* s) const { ccons_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct SetDeleter {
  void operator()(ccons_matrix_set* s) const { ccons_matrix_set_free(s); }
};
using SetHandle = std::unique_ptr<ccons_matrix_set, SetDeleter>;

struct DecisionDeleter {
  void operator()(ccons_decision* d) const { ccons_decision_free(d); }
};
using DecisionHandle = std::unique_ptr<ccons_decision, DecisionDeleter>;

void check(ccons_status status) {
  if (status != CCONS_OK) {
    throw CliError{std::string(ccons_status_name(status)) + ": " + ccons_last_error()};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw CliError{"cannot write " + path};
}

SetHandle load_set(const std::string& path) {
  const std::string text = read_file(path);
  ccons_matrix_set* raw = nullptr;
  check(ccons_matrix_set_from_json(text.c_str(), &raw));
  return SetHandle(raw);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Options {
  std::string input;
  std::string witness;
  std::string out;
  std::string policy = "periodic";
  std::string sequence;
  std::string x0;
  std::string profile = "mixed";
  int horizon = 200;
  double eps = 1e-6;
  std::uint64_t seed = 1;
  std::uint64_t state_budget = 5'000'000;
  int dimension_cap = 20;
  bool necessary_only = false;
  int cases = 100;
  int n = 4;
  int clusters = 2;
  int max_matrices = 3;
  bool inject_bug = false;
};

int cmd_validate(const Options& o) {
  auto set = load_set(o.input);
  char* report = nullptr;
  check(ccons_assumption_report(set.get(), &report));
  CString guard(report);
  std::cout << report << '\n';
  if (!o.out.empty()) write_file(o.out, std::string(report) + "\n");
  return kPositive;
}

int cmd_decide(const Options& o) {
  auto set = load_set(o.input);
  ccons_decide_options opts;
  ccons_decide_options_init(&opts);
  opts.state_budget = o.state_budget;
  opts.dimension_cap = o.dimension_cap;
  opts.necessary_only = o.necessary_only ? 1 : 0;

  ccons_decision* raw = nullptr;
  check(ccons_decide(set.get(), &opts, &raw));
  DecisionHandle decision(raw);

  char* json = nullptr;
  check(ccons_decision_json(decision.get(), &json));
  CString json_guard(json);
  std::cout << json << '\n';
  if (!o.out.empty()) write_file(o.out, std::string(json) + "\n");

  ccons_verdict verdict;
  check(ccons_decision_verdict(decision.get(), &verdict));
  switch (verdict) {
    case CCONS_CONSENSUS_SET: return kPositive;
    case CCONS_NECESSARY_ONLY_PASSED: return kInconclusive;
    case CCONS_NOT_CONSENSUS_SET: break;
  }
  if (!o.witness.empty()) {
    char* w = nullptr;
    check(ccons_decision_witness_json(decision.get(), &w));
    CString w_guard(w);
    write_file(o.witness, std::string(w) + "\n");
  }
  return kNegative;
}

int cmd_verify(const Options& o) {
  auto set = load_set(o.input);
  const std::string witness = read_file(o.witness);
  int valid = 0;
  char* report = nullptr;
  check(ccons_verify_witness(set.get(), witness.c_str(), &valid, &report));
  CString guard(report);
  std::cout << report << '\n';
  return valid != 0 ? kPositive : kNegative;
}

int cmd_simulate(const Options& o) {
  auto set = load_set(o.input);
  ccons_simulate_options opts;
  ccons_simulate_options_init(&opts);
  opts.horizon = o.horizon;
  opts.eps = o.eps;
  opts.seed = o.seed;

  if (o.policy == "periodic") {
    opts.policy = CCONS_POLICY_PERIODIC;
  } else if (o.policy == "random") {
    opts.policy = CCONS_POLICY_RANDOM;
  } else if (o.policy == "fixed") {
    opts.policy = CCONS_POLICY_FIXED;
  } else if (o.policy == "witness") {
    opts.policy = CCONS_POLICY_WITNESS;
  } else {
    throw CliError{"unknown policy " + o.policy};
  }

  const auto names = split(o.sequence);
  std::vector<const char*> name_ptrs;
  for (const auto& s : names) name_ptrs.push_back(s.c_str());
  if (!names.empty()) {
    opts.sequence = name_ptrs.data();
    opts.sequence_length = name_ptrs.size();
  } else if (opts.policy == CCONS_POLICY_FIXED) {
    throw CliError{"fixed policy needs --sequence"};
  }

  std::vector<double> x0;
  for (const auto& v : split(o.x0)) {
    try {
      x0.push_back(std::stod(v));
    } catch (const std::exception&) {
      throw CliError{"bad --x0 entry '" + v + "'"};
    }
  }
  if (!x0.empty()) {
    opts.x0 = x0.data();
    opts.x0_length = x0.size();
  }

  std::string witness;
  if (opts.policy == CCONS_POLICY_WITNESS) {
    if (o.witness.empty()) throw CliError{"witness policy needs --witness"};
    witness = read_file(o.witness);
    opts.witness_json = witness.c_str();
  }

  char* csv = nullptr;
  char* profile = nullptr;
  const ccons_status status = ccons_simulate(set.get(), &opts, &csv, &profile);
  CString csv_guard(csv);
  CString profile_guard(profile);
  check(status);
  if (!o.out.empty()) write_file(o.out, csv);
  if (o.out != "-") std::cout << profile << '\n';
  return kPositive;
}

int cmd_oracle(const Options& o) {
  ccons_oracle_options opts;
  ccons_oracle_options_init(&opts);
  opts.cases = o.cases;
  opts.n = o.n;
  opts.clusters = o.clusters;
  opts.max_matrices = o.max_matrices;
  opts.seed = o.seed;
  opts.horizon = o.horizon;
  opts.eps = o.eps;
  opts.inject_no_fixpoint = o.inject_bug ? 1 : 0;
  if (o.profile == "mixed") {
    opts.profile = CCONS_PROFILE_MIXED;
  } else if (o.profile == "a123") {
    opts.profile = CCONS_PROFILE_A123;
  } else if (o.profile == "a14") {
    opts.profile = CCONS_PROFILE_A14;
  } else {
    throw CliError{"unknown profile " + o.profile};
  }

  char* summary = nullptr;
  int disagreements = 0;
  check(ccons_oracle_run(&opts, &summary, &disagreements));
  CString guard(summary);
  std::cout << summary << '\n';
  if (!o.out.empty()) write_file(o.out, std::string(summary) + "\n");
  return disagreements == 0 ? kPositive : kDisagreement;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster consensus analysis for finite sets of stochastic matrices"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Validate input and report assumptions");
  validate->add_option("--input", o.input, "Matrix-set JSON")->required();
  validate->add_option("--out", o.out, "Also write the report here");

  auto* decide = app.add_subcommand("decide", "Decide whether the set is a cluster consensus set");
  decide->add_option("--input", o.input, "Matrix-set JSON")->required();
  decide->add_option("--witness", o.witness, "Write the witness here when one exists");
  decide->add_option("--out", o.out, "Also write the decision JSON here");
  decide->add_option("--state-budget", o.state_budget, "Maximum explored pair states");
  decide->add_option("--dimension-cap", o.dimension_cap, "Largest n accepted");
  decide->add_flag("--necessary-only", o.necessary_only, "Never report a positive verdict");

  auto* verify = app.add_subcommand("verify", "Check a witness against a matrix set");
  verify->add_option("--input", o.input, "Matrix-set JSON")->required();
  verify->add_option("--witness", o.witness, "Witness JSON")->required();

  auto* simulate = app.add_subcommand("simulate", "Run the switched averaging dynamics");
  simulate->add_option("--input", o.input, "Matrix-set JSON")->required();
  simulate->add_option("--policy", o.policy, "Switching policy")
      ->check(CLI::IsMember({"periodic", "random", "fixed", "witness"}));
  simulate->add_option("--horizon", o.horizon, "Number of steps");
  simulate->add_option("--eps", o.eps, "Consensus threshold");
  simulate->add_option("--seed", o.seed, "Seed for the random policy");
  simulate->add_option("--sequence", o.sequence, "Comma-separated matrix names");
  simulate->add_option("--x0", o.x0, "Comma-separated initial state");
  simulate->add_option("--witness", o.witness, "Witness JSON for replay");
  simulate->add_option("--out", o.out, "CSV trajectory path ('-' for stdout)");

  auto* oracle = app.add_subcommand("oracle", "Cross-check decisions against simulation");
  oracle->add_option("--cases", o.cases, "Number of random sets");
  oracle->add_option("--n", o.n, "Dimension (2..5)");
  oracle->add_option("--clusters", o.clusters, "Cluster count, 0 for random");
  oracle->add_option("--max-matrices", o.max_matrices, "Largest set size");
  oracle->add_option("--seed", o.seed, "Generator seed");
  oracle->add_option("--profile", o.profile, "Generator profile")
      ->check(CLI::IsMember({"mixed", "a123", "a14"}));
  oracle->add_option("--horizon", o.horizon, "Random-run length on the positive side");
  oracle->add_option("--eps", o.eps, "Consensus threshold");
  oracle->add_option("--out", o.out, "Also write the summary here");
  oracle->add_flag("--inject-bug", o.inject_bug, "Disable dead-state removal (mutation test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPositive : kError;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*decide) return cmd_decide(o);
    if (*verify) return cmd_verify(o);
    if (*simulate) return cmd_simulate(o);
    if (*oracle) return cmd_oracle(o);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kError;
  }
  return kError;
}
