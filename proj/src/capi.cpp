#include "ccons/ccons.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "ccons/decision.hpp"
#include "ccons/error.hpp"
#include "ccons/graph.hpp"
#include "ccons/io.hpp"
#include "ccons/oracle.hpp"
#include "ccons/simulator.hpp"

struct ccons_matrix_set {
  ccons::MatrixSet set;
};

struct ccons_decision {
  ccons::DecisionResult result;
};

namespace {

thread_local std::string last_error;

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ccons_status set_error(ccons_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs f, translating exceptions into status codes.
template <class F>
ccons_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return CCONS_OK;
  } catch (const ccons::Error& e) {
    return set_error(static_cast<ccons_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(CCONS_ERR_UNEXPECTED, "out of memory");
  } catch (const std::exception& e) {
    return set_error(CCONS_ERR_UNEXPECTED, e.what());
  }
}

#define CCONS_REQUIRE(ptr)                                                          \
  do {                                                                              \
    if ((ptr) == nullptr) {                                                         \
      return set_error(CCONS_ERR_INVALID_ARGUMENT, #ptr " must not be NULL");       \
    }                                                                               \
  } while (0)

}  // namespace

extern "C" {

const char* ccons_last_error(void) { return last_error.c_str(); }

const char* ccons_status_name(ccons_status status) {
  switch (status) {
    case CCONS_OK: return "OK";
    case CCONS_ERR_NO_WITNESS: return "NoWitness";
    case CCONS_ERR_UNEXPECTED: return "Unexpected";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= static_cast<int>(ccons::ErrorCode::InvalidArgument)) {
    return ccons::to_string(static_cast<ccons::ErrorCode>(code)).data();
  }
  return "Unknown";
}

void ccons_string_free(char* s) { std::free(s); }

void ccons_decide_options_init(ccons_decide_options* options) {
  if (options == nullptr) return;
  const ccons::DecideOptions defaults;
  options->dimension_cap = defaults.dimension_cap;
  options->state_budget = defaults.state_budget;
  options->necessary_only = 0;
  options->skip_liveness_fixpoint = 0;
}

void ccons_simulate_options_init(ccons_simulate_options* options) {
  if (options == nullptr) return;
  options->policy = CCONS_POLICY_PERIODIC;
  options->horizon = 200;
  options->eps = 1e-6;
  options->seed = 0;
  options->sequence = nullptr;
  options->sequence_length = 0;
  options->x0 = nullptr;
  options->x0_length = 0;
  options->witness_json = nullptr;
}

void ccons_oracle_options_init(ccons_oracle_options* options) {
  if (options == nullptr) return;
  const ccons::OracleConfig defaults;
  options->cases = defaults.cases;
  options->n = defaults.n;
  options->clusters = defaults.clusters;
  options->max_matrices = defaults.max_matrices;
  options->seed = defaults.seed;
  options->profile = CCONS_PROFILE_MIXED;
  options->horizon = defaults.horizon;
  options->eps = defaults.eps;
  options->inject_no_fixpoint = 0;
}

ccons_status ccons_matrix_set_from_json(const char* json, ccons_matrix_set** out) {
  CCONS_REQUIRE(json);
  CCONS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new ccons_matrix_set{ccons::io::parse_matrix_set(json)}; });
}

void ccons_matrix_set_free(ccons_matrix_set* set) { delete set; }

ccons_status ccons_matrix_set_dimension(const ccons_matrix_set* set, int* n) {
  CCONS_REQUIRE(set);
  CCONS_REQUIRE(n);
  *n = set->set.n();
  return CCONS_OK;
}

ccons_status ccons_matrix_set_count(const ccons_matrix_set* set, int* count) {
  CCONS_REQUIRE(set);
  CCONS_REQUIRE(count);
  *count = set->set.size();
  return CCONS_OK;
}

ccons_status ccons_assumption_report(const ccons_matrix_set* set, char** json_out) {
  CCONS_REQUIRE(set);
  CCONS_REQUIRE(json_out);
  return guarded([&] {
    const auto report = ccons::check_assumptions(set->set);
    *json_out = copy_string(ccons::io::to_json(report, set->set).dump(2));
  });
}

ccons_status ccons_decide(const ccons_matrix_set* set, const ccons_decide_options* options,
                          ccons_decision** out) {
  CCONS_REQUIRE(set);
  CCONS_REQUIRE(out);
  *out = nullptr;
  ccons_decide_options opts;
  ccons_decide_options_init(&opts);
  if (options != nullptr) opts = *options;
  return guarded([&] {
    ccons::DecideOptions o;
    o.dimension_cap = opts.dimension_cap;
    o.state_budget = opts.state_budget;
    o.skip_liveness_fixpoint = opts.skip_liveness_fixpoint != 0;
    auto result = opts.necessary_only != 0 ? ccons::decide_necessary_only(set->set, o)
                                           : ccons::decide(set->set, o);
    *out = new ccons_decision{std::move(result)};
  });
}

void ccons_decision_free(ccons_decision* decision) { delete decision; }

ccons_status ccons_decision_verdict(const ccons_decision* decision, ccons_verdict* out) {
  CCONS_REQUIRE(decision);
  CCONS_REQUIRE(out);
  switch (decision->result.verdict) {
    case ccons::Verdict::ConsensusSet: *out = CCONS_CONSENSUS_SET; break;
    case ccons::Verdict::NotConsensusSet: *out = CCONS_NOT_CONSENSUS_SET; break;
    case ccons::Verdict::NecessaryOnlyPassed: *out = CCONS_NECESSARY_ONLY_PASSED; break;
  }
  return CCONS_OK;
}

ccons_status ccons_decision_witness_length(const ccons_decision* decision, size_t* out) {
  CCONS_REQUIRE(decision);
  CCONS_REQUIRE(out);
  if (!decision->result.witness) return set_error(CCONS_ERR_NO_WITNESS, "decision has no witness");
  *out = decision->result.witness->length();
  return CCONS_OK;
}

ccons_status ccons_decision_json(const ccons_decision* decision, char** json_out) {
  CCONS_REQUIRE(decision);
  CCONS_REQUIRE(json_out);
  return guarded([&] { *json_out = copy_string(ccons::io::to_json(decision->result).dump(2)); });
}

ccons_status ccons_decision_witness_json(const ccons_decision* decision, char** json_out) {
  CCONS_REQUIRE(decision);
  CCONS_REQUIRE(json_out);
  if (!decision->result.witness) return set_error(CCONS_ERR_NO_WITNESS, "decision has no witness");
  return guarded([&] { *json_out = copy_string(ccons::io::to_json(*decision->result.witness).dump(2)); });
}

ccons_status ccons_verify_witness(const ccons_matrix_set* set, const char* witness_json, int* valid,
                                  char** report_out) {
  CCONS_REQUIRE(set);
  CCONS_REQUIRE(witness_json);
  CCONS_REQUIRE(valid);
  return guarded([&] {
    const auto w = ccons::io::parse_witness(witness_json);
    const auto check = ccons::verify_witness(w, set->set);
    *valid = check.valid ? 1 : 0;
    if (report_out != nullptr) {
      ccons::io::json report{{"valid", check.valid},
                             {"condition", std::string(ccons::to_string(check.violated))},
                             {"detail", check.detail},
                             {"seed_in_cycle", check.seed_in_cycle}};
      *report_out = copy_string(report.dump(2));
    }
  });
}

ccons_status ccons_simulate(const ccons_matrix_set* set, const ccons_simulate_options* options,
                            char** csv_out, char** profile_out) {
  CCONS_REQUIRE(set);
  ccons_simulate_options opts;
  ccons_simulate_options_init(&opts);
  if (options != nullptr) opts = *options;
  return guarded([&] {
    const auto& ms = set->set;
    std::vector<std::string> names;
    if (opts.sequence != nullptr) {
      for (std::size_t k = 0; k < opts.sequence_length; ++k) names.emplace_back(opts.sequence[k]);
    } else {
      names = ms.names();
    }

    std::vector<double> x0;
    ccons::SwitchingPolicy policy;
    switch (opts.policy) {
      case CCONS_POLICY_PERIODIC: policy = ccons::policy::Periodic{names}; break;
      case CCONS_POLICY_FIXED: policy = ccons::policy::FixedSequence{names}; break;
      case CCONS_POLICY_RANDOM: policy = ccons::policy::UniformRandom{opts.seed}; break;
      case CCONS_POLICY_WITNESS: {
        if (opts.witness_json == nullptr) {
          ccons::fail(ccons::ErrorCode::InvalidPolicy, "witness policy needs a witness");
        }
        auto w = ccons::io::parse_witness(opts.witness_json);
        x0 = ccons::witness_initial_state(w, ms.n());
        policy = ccons::policy::WitnessReplay{std::move(w)};
        break;
      }
      default: ccons::fail(ccons::ErrorCode::InvalidPolicy, "unknown policy");
    }
    if (opts.x0 != nullptr) {
      x0.assign(opts.x0, opts.x0 + opts.x0_length);
    } else if (x0.empty()) {
      x0.resize(static_cast<std::size_t>(ms.n()), 0.0);
      for (int v = 0; v < ms.n() && ms.n() > 1; ++v) x0[v] = static_cast<double>(v) / (ms.n() - 1);
    }

    const auto traj = ccons::run(x0, policy, ms, opts.horizon);
    const auto profile = ccons::detect_cluster_consensus(traj, ms.clustering(), opts.eps);
    if (csv_out != nullptr) *csv_out = copy_string(ccons::trajectory_csv(traj));
    if (profile_out != nullptr) *profile_out = copy_string(ccons::io::to_json(profile).dump(2));
  });
}

ccons_status ccons_oracle_run(const ccons_oracle_options* options, char** summary_out,
                              int* disagreements) {
  ccons_oracle_options opts;
  ccons_oracle_options_init(&opts);
  if (options != nullptr) opts = *options;
  return guarded([&] {
    ccons::OracleConfig config;
    config.cases = opts.cases;
    config.n = opts.n;
    config.clusters = opts.clusters;
    config.max_matrices = opts.max_matrices;
    config.seed = opts.seed;
    config.horizon = opts.horizon;
    config.eps = opts.eps;
    config.inject_no_fixpoint = opts.inject_no_fixpoint != 0;
    switch (opts.profile) {
      case CCONS_PROFILE_A123: config.profile = ccons::gen::Profile::A123; break;
      case CCONS_PROFILE_A14: config.profile = ccons::gen::Profile::A14; break;
      default: config.profile = ccons::gen::Profile::Mixed; break;
    }
    const auto summary = ccons::run_oracle(config);

    if (disagreements != nullptr) *disagreements = summary.disagreements;
    if (summary_out != nullptr) {
      ccons::io::json cases = ccons::io::json::array();
      for (const auto& c : summary.cases) {
        ccons::io::json row{{"case", c.index},
                            {"n", c.n},
                            {"clusters", c.clusters},
                            {"matrices", c.matrices},
                            {"regime", std::string(ccons::to_string(c.regime))},
                            {"verdict", c.verdict ? ccons::io::json(std::string(ccons::to_string(*c.verdict)))
                                                  : ccons::io::json(nullptr)},
                            {"agree", c.agree}};
        if (c.final_tau >= 0) row["final_tau"] = c.final_tau;
        if (c.final_spread >= 0) row["final_spread"] = c.final_spread;
        if (c.witness) row["witness_length"] = c.witness->length();
        if (c.min_replay_spread >= 0) row["min_replay_spread"] = c.min_replay_spread;
        if (!c.note.empty()) row["note"] = c.note;
        cases.push_back(std::move(row));
      }
      ccons::io::json doc{{"cases", std::move(cases)},
                          {"disagreements", summary.disagreements},
                          {"consensus", summary.consensus},
                          {"not_consensus", summary.not_consensus},
                          {"regime_a123", summary.regime_a123},
                          {"regime_a14", summary.regime_a14},
                          {"spanning_tree_violations", summary.spanning_tree_violations}};
      *summary_out = copy_string(doc.dump(2));
    }
  });
}

ccons_status ccons_graph_dot(const ccons_matrix_set* set, const char* matrix_name, int condensation,
                             char** dot_out) {
  CCONS_REQUIRE(set);
  CCONS_REQUIRE(matrix_name);
  CCONS_REQUIRE(dot_out);
  return guarded([&] {
    const auto& ms = set->set;
    const auto g = ccons::graph_of(ms.matrix(ms.index_of(matrix_name)));
    *dot_out = copy_string(condensation != 0
                               ? ccons::to_dot(ccons::scc_condensation(g), matrix_name)
                               : ccons::to_dot(g, matrix_name, &ms.clustering()));
  });
}

}  // extern "C"
