#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ccons/decision.hpp"
#include "ccons/matrix.hpp"

namespace ccons {

/// Random instance generators shared by the oracle harness and the tests.
namespace gen {

using Rng = std::mt19937_64;

/// Uniform in [0, 1) from the top 53 bits; identical on every platform.
double uniform(Rng& rng);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive

/// K nonempty clusters over a shuffled vertex order.
Clustering random_clustering(Rng& rng, int n, int k);

/// Dense random row-stochastic matrix (no structure).
StochasticMatrix random_stochastic(Rng& rng, int n, double density = 1.0);

/// Random matrix with inter-cluster common influence, by block-sum projection:
/// a K x K stochastic block matrix is sampled and each row's mass inside
/// every cluster is rescaled to the matching block entry.
StochasticMatrix common_influence_matrix(Rng& rng, const Clustering& c, double density = 1.0);

/// Self-loops, symmetric support, common influence; entries built from a
/// coarse grid before projection.
StochasticMatrix symmetric_pattern_matrix(Rng& rng, const Clustering& c);

/// Self-loops, doubly stochastic, common influence: a grid-weighted mixture of
/// the identity and cluster-respecting permutations.
StochasticMatrix doubly_stochastic_matrix(Rng& rng, const Clustering& c);

enum class Profile { Mixed, A123, A14 };

MatrixSet random_matrix_set(Rng& rng, const Clustering& c, int count, Profile profile);

}  // namespace gen

struct OracleConfig {
  int cases = 100;
  int n = 4;
  /// 0 picks K uniformly from 1..min(3, n) per case.
  int clusters = 2;
  int max_matrices = 3;
  std::uint64_t seed = 1;
  gen::Profile profile = gen::Profile::Mixed;
  int horizon = 200;
  double eps = 1e-6;
  /// Minimum spread required along witness replays.
  double replay_spread = 0.5;
  bool inject_no_fixpoint = false;
};

struct OracleCase {
  int index = 0;
  int n = 0;
  int clusters = 0;
  int matrices = 0;
  Regime regime = Regime::None;
  std::optional<Verdict> verdict;
  bool agree = false;
  std::string note;
  /// ConsensusSet side.
  double final_tau = -1.0;
  double final_spread = -1.0;
  bool spanning_trees = true;
  /// NotConsensusSet side.
  std::optional<Witness> witness;
  double min_replay_spread = -1.0;
};

struct OracleSummary {
  std::vector<OracleCase> cases;
  int disagreements = 0;
  int consensus = 0;
  int not_consensus = 0;
  int regime_a123 = 0;
  int regime_a14 = 0;
  int spanning_tree_violations = 0;
};

/// Largest dimension the harness accepts.
inline constexpr int kOracleMaxN = 5;

/// Generates random sets and checks decide() against the simulator.
/// Throws InvalidArgument for n outside [2, kOracleMaxN].
OracleSummary run_oracle(const OracleConfig& config);

/// Evaluates a single set the same way run_oracle does.
OracleCase evaluate_case(const MatrixSet& set, const OracleConfig& config, std::uint64_t case_seed);

}  // namespace ccons
