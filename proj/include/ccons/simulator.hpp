#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ccons/decision.hpp"
#include "ccons/ergodicity.hpp"
#include "ccons/matrix.hpp"

namespace ccons {

namespace policy {

/// Plays the listed matrices once; the horizon may not exceed the list.
struct FixedSequence {
  std::vector<std::string> names;
};
struct Periodic {
  std::vector<std::string> names;
};
/// Uniform choice from the set, driven by a per-run mt19937_64.
struct UniformRandom {
  std::uint64_t seed = 0;
};
/// State-space replay of a witness cycle. Because x(t) = P(t)...P(1) x(0)
/// composes on the opposite side from the row products the witness
/// certifies, the cycle is played in reverse order; starting from a state
/// constant on the cycle entry sets, those values then persist.
struct WitnessReplay {
  Witness witness;
};

}  // namespace policy

using SwitchingPolicy =
    std::variant<policy::FixedSequence, policy::Periodic, policy::UniformRandom, policy::WitnessReplay>;

struct Trajectory {
  /// states[t] is x(t); states.size() == policy_log.size() + 1.
  std::vector<std::vector<double>> states;
  std::vector<std::string> policy_log;
  /// spread_log[t] is cluster_spread(states[t]).
  std::vector<double> spread_log;
};

struct ConsensusProfile {
  bool converged = false;
  std::optional<std::vector<double>> per_cluster_values;
  std::optional<int> convergence_time;
  double final_spread = 0.0;
};

std::vector<double> step(std::span<const double> x, const StochasticMatrix& p);

double cluster_spread(std::span<const double> x, const Clustering& c);

Trajectory run(std::span<const double> x0, const SwitchingPolicy& policy, const MatrixSet& set,
               int horizon);

/// Converged iff the spread stays <= eps over the final max(10, T/10) steps.
ConsensusProfile detect_cluster_consensus(const Trajectory& traj, const Clustering& c, double eps);

/// Initial state for witness replays: 0 on the cycle's first S, 1 on its
/// first S', 0.5 elsewhere.
std::vector<double> witness_initial_state(const Witness& w, int n);

struct SupportTrace {
  /// supports[t-1] = (supp e_i^T P(1)...P(t), supp e_j^T P(1)...P(t)), t = 1..T.
  std::vector<PairState> supports;
  bool disjoint_throughout = true;
  /// Steps on which the numeric and combinatorial supports were compared.
  int numeric_checked_steps = 0;
};

/// Tracks the supports of e_i^T P(1)...P(t) and e_j^T P(1)...P(t) as iterated
/// graph images. For t <= numeric_horizon (default 2n) the row vectors are
/// also multiplied out and their supports must match; beyond that, mass on
/// long paths can fall under zero_tol, so only the exact images are tracked.
/// `sequence` is repeated if shorter than the horizon. Throws SupportMismatch.
SupportTrace support_trajectories(int i, int j, const std::vector<std::string>& sequence,
                                  const MatrixSet& set, int horizon,
                                  std::optional<int> numeric_horizon = std::nullopt);

struct ProductCheck {
  /// tau_c of P(t)...P(1), t = 1..T.
  std::vector<double> tau;
  /// Common row per cluster, reported once the final tau_c <= 1e-10.
  std::optional<std::vector<std::vector<double>>> limit_rows;
};

ProductCheck forward_product_check(const std::vector<std::string>& sequence, const MatrixSet& set,
                                   int horizon);

/// Draws `length` matrix names uniformly (same generator as UniformRandom).
std::vector<std::string> random_sequence(const MatrixSet& set, std::uint64_t seed, int length);

/// CSV with header t,matrix,spread,x_0,...; 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);

}  // namespace ccons
