#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ccons/graph.hpp"
#include "ccons/matrix.hpp"

namespace ccons {

/// Ordered pair of disjoint nonempty vertex sets.
struct PairState {
  VertexSet s;
  VertexSet s_prime;

  bool valid() const { return !s.empty() && !s_prime.empty() && s.disjoint(s_prime); }
  bool operator==(const PairState&) const = default;
};

/// One position of a witness run: the sets held at this step and the matrix
/// applied to move to the next one.
struct WitnessStep {
  std::string matrix;
  VertexSet s;
  VertexSet s_prime;

  bool operator==(const WitnessStep&) const = default;
};

/// Lasso-shaped certificate that a set is not a cluster consensus set.
/// The run starts at prefix[0] (or cycle[0] when the prefix is empty) and
/// then repeats `cycle` forever.
struct Witness {
  int i = 0;
  int j = 0;
  int cluster = 0;
  std::vector<WitnessStep> prefix;
  std::vector<WitnessStep> cycle;

  std::size_t length() const { return cycle.size(); }
  bool operator==(const Witness&) const = default;
};

/// 3^n - 2^(n+1) + 1, the number of ordered pairs of disjoint nonempty subsets.
std::uint64_t witness_length_bound(int n);

enum class Verdict { ConsensusSet, NotConsensusSet, NecessaryOnlyPassed };

std::string_view to_string(Verdict v);

struct DecisionStats {
  std::uint64_t explored_states = 0;
  std::uint64_t seeds_examined = 0;
  std::uint64_t transitions = 0;
  std::uint64_t live_states = 0;
};

struct DecisionResult {
  Verdict verdict = Verdict::NecessaryOnlyPassed;
  std::optional<Witness> witness;
  DecisionStats stats;
  Regime regime = Regime::None;
  bool common_influence = false;
};

struct DecideOptions {
  int dimension_cap = 20;
  std::uint64_t state_budget = 5'000'000;
  /// Mutation hook for the oracle harness: treats every explored state as
  /// live. Never set outside tests.
  bool skip_liveness_fixpoint = false;
};

/// Transition system over pair states reachable from the singleton seeds
/// ({i}, {j}), i < j in the same cluster. Matrix m maps (S, S') to
/// (N_m(S), N_m(S')) when the images are nonempty and disjoint.
class PairAutomaton {
 public:
  struct Seed {
    int i;
    int j;
    int cluster;
  };

  PairAutomaton(const MatrixSet& set, const DecideOptions& options);

  /// Seeds in increasing (i, j) order.
  const std::vector<Seed>& seeds() const { return seeds_; }
  std::size_t state_count() const { return keys_.size(); }

  /// Removes states without a successor inside the region until none are left.
  void compute_liveness();
  bool is_live(PairState state) const;
  bool seed_live(const Seed& seed) const;

  /// Walks from a live seed taking the lowest-index matrix that keeps the run
  /// live, and cuts the walk at the first repeated state.
  Witness extract_witness(const Seed& seed) const;

  const DecisionStats& stats() const { return stats_; }

 private:
  std::uint64_t key(PairState p) const {
    return (p.s.bits() << n_) | p.s_prime.bits();
  }
  PairState unpack(std::uint64_t k) const {
    const VertexSet::Mask low = (VertexSet::Mask{1} << n_) - 1;
    return {VertexSet(k >> n_), VertexSet(k & low)};
  }
  int lookup(PairState p) const;

  const MatrixSet& set_;
  DecideOptions options_;
  int n_;
  int matrices_;
  std::vector<NeighborTable> tables_;
  std::vector<Seed> seeds_;
  std::vector<std::uint64_t> keys_;
  std::unordered_map<std::uint64_t, std::int32_t> index_;
  /// successors_[state * matrices_ + m], -1 when the image pair is not a state.
  std::vector<std::int32_t> successors_;
  std::vector<char> live_;
  DecisionStats stats_;
};

/// Full decision. ConsensusSet is only reported when the report's regime is
/// A123 or A14 and common influence holds; otherwise the absence of a live
/// seed yields NecessaryOnlyPassed.
DecisionResult decide(const MatrixSet& set, const AssumptionReport& report,
                      const DecideOptions& options = {});
DecisionResult decide(const MatrixSet& set, const DecideOptions& options = {});

/// Same search, never returns ConsensusSet. Throws CommonInfluenceViolated
/// when the set lacks inter-cluster common influence.
DecisionResult decide_necessary_only(const MatrixSet& set, const DecideOptions& options = {});

enum class WitnessCondition {
  None,
  Nonempty,
  Length,
  Disjointness,  // (i)
  Containment,   // (ii)
  Membership,    // (iii)
};

std::string_view to_string(WitnessCondition c);

struct WitnessCheck {
  bool valid = false;
  WitnessCondition violated = WitnessCondition::None;
  std::string detail;
  /// The seed pair already sits in the cycle entry (no prefix needed).
  bool seed_in_cycle = false;
};

/// Checks a witness against the matrix set using literal subset containment,
/// independently of how it was produced. Throws UnknownMatrixName.
WitnessCheck verify_witness(const Witness& w, const MatrixSet& set, const Clustering& c);
inline WitnessCheck verify_witness(const Witness& w, const MatrixSet& set) {
  return verify_witness(w, set, set.clustering());
}

/// Matrix names of prefix followed by `length` - |prefix| steps of the cycle.
std::vector<std::string> witness_sequence(const Witness& w, std::size_t length);

}  // namespace ccons
