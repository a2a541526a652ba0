#include "ccons/decision.hpp"

#include <algorithm>
#include <map>

#include "ccons/error.hpp"

namespace ccons {

std::uint64_t witness_length_bound(int n) {
  std::uint64_t three = 1;
  for (int k = 0; k < n; ++k) three *= 3;
  return three - (std::uint64_t{2} << n) + 1;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::ConsensusSet: return "ConsensusSet";
    case Verdict::NotConsensusSet: return "NotConsensusSet";
    case Verdict::NecessaryOnlyPassed: return "NecessaryOnlyPassed";
  }
  return "NecessaryOnlyPassed";
}

PairAutomaton::PairAutomaton(const MatrixSet& set, const DecideOptions& options)
    : set_(set), options_(options), n_(set.n()), matrices_(set.size()) {
  if (options_.dimension_cap > kMaxVertices) {
    fail(ErrorCode::InvalidArgument,
         "dimension cap above " + std::to_string(kMaxVertices) + " is not supported");
  }
  if (n_ > options_.dimension_cap) {
    fail(ErrorCode::DimensionTooLarge, "n=" + std::to_string(n_) + " exceeds dimension cap " +
                                           std::to_string(options_.dimension_cap));
  }
  for (const auto& p : set.matrices()) tables_.emplace_back(graph_of(p));

  const Clustering& c = set.clustering();
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (c.cluster_of(i) == c.cluster_of(j)) seeds_.push_back({i, j, c.cluster_of(i)});
    }
  }
  stats_.seeds_examined = seeds_.size();

  auto intern = [&](std::uint64_t k) -> std::int32_t {
    auto [it, inserted] = index_.try_emplace(k, static_cast<std::int32_t>(keys_.size()));
    if (inserted) {
      if (keys_.size() >= options_.state_budget) {
        fail(ErrorCode::StateBudgetExceeded,
             "more than " + std::to_string(options_.state_budget) + " pair states");
      }
      keys_.push_back(k);
    }
    return it->second;
  };

  for (const Seed& seed : seeds_) {
    intern(key({VertexSet::single(seed.i), VertexSet::single(seed.j)}));
  }
  // keys_ grows while we scan it, which makes this a breadth-first sweep.
  for (std::size_t idx = 0; idx < keys_.size(); ++idx) {
    const PairState state = unpack(keys_[idx]);
    for (int m = 0; m < matrices_; ++m) {
      const PairState next{tables_[m].image(state.s), tables_[m].image(state.s_prime)};
      ++stats_.transitions;
      successors_.push_back(next.valid() ? intern(key(next)) : -1);
    }
  }
  stats_.explored_states = keys_.size();
  live_.assign(keys_.size(), 1);
}

int PairAutomaton::lookup(PairState p) const {
  if (!p.valid()) return -1;
  auto it = index_.find(key(p));
  return it == index_.end() ? -1 : it->second;
}

void PairAutomaton::compute_liveness() {
  const std::size_t count = keys_.size();
  live_.assign(count, 1);
  if (options_.skip_liveness_fixpoint) {
    stats_.live_states = count;
    return;
  }

  std::vector<std::int32_t> out_degree(count, 0);
  std::vector<std::int32_t> pred_start(count + 1, 0);
  for (std::size_t s = 0; s < count; ++s) {
    for (int m = 0; m < matrices_; ++m) {
      const std::int32_t t = successors_[s * matrices_ + m];
      if (t >= 0) {
        ++out_degree[s];
        ++pred_start[t + 1];
      }
    }
  }
  for (std::size_t s = 0; s < count; ++s) pred_start[s + 1] += pred_start[s];
  std::vector<std::int32_t> preds(pred_start[count]);
  std::vector<std::int32_t> fill(pred_start.begin(), pred_start.end() - 1);
  for (std::size_t s = 0; s < count; ++s) {
    for (int m = 0; m < matrices_; ++m) {
      const std::int32_t t = successors_[s * matrices_ + m];
      if (t >= 0) preds[fill[t]++] = static_cast<std::int32_t>(s);
    }
  }

  std::vector<std::int32_t> dead;
  for (std::size_t s = 0; s < count; ++s) {
    if (out_degree[s] == 0) {
      live_[s] = 0;
      dead.push_back(static_cast<std::int32_t>(s));
    }
  }
  while (!dead.empty()) {
    const std::int32_t s = dead.back();
    dead.pop_back();
    for (std::int32_t k = pred_start[s]; k < pred_start[s + 1]; ++k) {
      const std::int32_t p = preds[k];
      if (live_[p] && --out_degree[p] == 0) {
        live_[p] = 0;
        dead.push_back(p);
      }
    }
  }
  stats_.live_states = static_cast<std::uint64_t>(std::count(live_.begin(), live_.end(), 1));
}

bool PairAutomaton::is_live(PairState state) const {
  const int idx = lookup(state);
  return idx >= 0 && live_[idx];
}

bool PairAutomaton::seed_live(const Seed& seed) const {
  return is_live({VertexSet::single(seed.i), VertexSet::single(seed.j)});
}

Witness PairAutomaton::extract_witness(const Seed& seed) const {
  int current = lookup({VertexSet::single(seed.i), VertexSet::single(seed.j)});
  if (current < 0 || !live_[current]) {
    fail(ErrorCode::InvalidArgument, "seed (" + std::to_string(seed.i) + "," +
                                         std::to_string(seed.j) + ") is not live");
  }

  std::vector<WitnessStep> walk;
  std::map<int, std::size_t> position;
  while (!position.contains(current)) {
    position[current] = walk.size();
    int chosen = -1;
    for (int m = 0; m < matrices_; ++m) {
      const std::int32_t t = successors_[static_cast<std::size_t>(current) * matrices_ + m];
      if (t >= 0 && live_[t]) {
        chosen = m;
        break;
      }
    }
    const PairState state = unpack(keys_[current]);
    if (chosen < 0) {
      fail(ErrorCode::InternalInconsistency,
           "live pair state has no live successor (fixpoint not reached)");
    }
    walk.push_back({set_.name(chosen), state.s, state.s_prime});
    current = successors_[static_cast<std::size_t>(current) * matrices_ + chosen];
  }

  const std::size_t entry = position[current];
  Witness w;
  w.i = seed.i;
  w.j = seed.j;
  w.cluster = seed.cluster;
  w.prefix.assign(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(entry));
  w.cycle.assign(walk.begin() + static_cast<std::ptrdiff_t>(entry), walk.end());
  return w;
}

namespace {

DecisionResult run_search(const MatrixSet& set, const DecideOptions& options, bool may_accept,
                          Regime regime, bool common_influence) {
  PairAutomaton automaton(set, options);
  automaton.compute_liveness();

  DecisionResult result;
  result.regime = regime;
  result.common_influence = common_influence;
  for (const auto& seed : automaton.seeds()) {
    if (automaton.seed_live(seed)) {
      result.verdict = Verdict::NotConsensusSet;
      result.witness = automaton.extract_witness(seed);
      break;
    }
  }
  if (!result.witness) {
    result.verdict = may_accept ? Verdict::ConsensusSet : Verdict::NecessaryOnlyPassed;
  }
  result.stats = automaton.stats();
  return result;
}

}  // namespace

DecisionResult decide(const MatrixSet& set, const AssumptionReport& report,
                      const DecideOptions& options) {
  const bool regime_ok = report.regime != Regime::None && report.common_influence;
  return run_search(set, options, regime_ok, report.regime, report.common_influence);
}

DecisionResult decide(const MatrixSet& set, const DecideOptions& options) {
  // Cut balance is informational only; skip the exhaustive pass here.
  return decide(set, check_assumptions(set, 0), options);
}

DecisionResult decide_necessary_only(const MatrixSet& set, const DecideOptions& options) {
  bool common = true;
  for (const auto& p : set.matrices()) {
    if (!has_common_influence(p, set.clustering()).holds) common = false;
  }
  if (!common) {
    fail(ErrorCode::CommonInfluenceViolated,
         "necessary-only mode requires inter-cluster common influence");
  }
  const Regime regime = check_assumptions(set, 0).regime;
  return run_search(set, options, false, regime, true);
}

std::string_view to_string(WitnessCondition c) {
  switch (c) {
    case WitnessCondition::None: return "none";
    case WitnessCondition::Nonempty: return "nonempty";
    case WitnessCondition::Length: return "length";
    case WitnessCondition::Disjointness: return "(i)";
    case WitnessCondition::Containment: return "(ii)";
    case WitnessCondition::Membership: return "(iii)";
  }
  return "none";
}

WitnessCheck verify_witness(const Witness& w, const MatrixSet& set, const Clustering& c) {
  const int n = set.n();
  if (c.n() != n) fail(ErrorCode::DimensionMismatch, "clustering and matrix set sizes differ");

  auto reject = [](WitnessCondition cond, std::string detail) {
    WitnessCheck out;
    out.valid = false;
    out.violated = cond;
    out.detail = std::move(detail);
    return out;
  };

  // Resolve every name first so that an unknown matrix is an error, not a verdict.
  std::vector<DirectedGraph> graphs;
  auto graph_for = [&](const std::string& name) -> const DirectedGraph& {
    return graphs[static_cast<std::size_t>(set.index_of(name))];
  };
  for (const auto& p : set.matrices()) graphs.push_back(graph_of(p));
  for (const auto& step : w.prefix) set.index_of(step.matrix);
  for (const auto& step : w.cycle) set.index_of(step.matrix);

  if (w.cycle.empty()) return reject(WitnessCondition::Length, "cycle is empty");
  if (w.cycle.size() > witness_length_bound(n)) {
    return reject(WitnessCondition::Length,
                  "cycle length " + std::to_string(w.cycle.size()) + " exceeds " +
                      std::to_string(witness_length_bound(n)));
  }

  // Run = prefix followed by one pass of the cycle.
  std::vector<const WitnessStep*> run;
  for (const auto& step : w.prefix) run.push_back(&step);
  for (const auto& step : w.cycle) run.push_back(&step);

  const VertexSet universe = VertexSet::full(n);
  for (std::size_t l = 0; l < run.size(); ++l) {
    const auto& step = *run[l];
    if (step.s.empty() || step.s_prime.empty() || !step.s.subset_of(universe) ||
        !step.s_prime.subset_of(universe)) {
      return reject(WitnessCondition::Nonempty,
                    "step " + std::to_string(l) + " has an empty or out-of-range set");
    }
  }
  for (std::size_t l = 0; l < run.size(); ++l) {
    if (!run[l]->s.disjoint(run[l]->s_prime)) {
      return reject(WitnessCondition::Disjointness, "sets intersect at step " + std::to_string(l));
    }
  }
  for (std::size_t l = 0; l < run.size(); ++l) {
    // The last prefix step feeds the cycle entry; the last cycle step wraps.
    const WitnessStep& next =
        l + 1 < run.size() ? *run[l + 1] : w.cycle.front();
    const DirectedGraph& g = graph_for(run[l]->matrix);
    if (!out_neighbors(g, run[l]->s).subset_of(next.s) ||
        !out_neighbors(g, run[l]->s_prime).subset_of(next.s_prime)) {
      return reject(WitnessCondition::Containment,
                    "image under '" + run[l]->matrix + "' at step " + std::to_string(l) +
                        " escapes the next sets");
    }
  }

  const WitnessStep& first = *run.front();
  if (w.i < 0 || w.i >= n || w.j < 0 || w.j >= n || w.i == w.j) {
    return reject(WitnessCondition::Membership, "seed vertices are invalid");
  }
  if (w.cluster < 0 || w.cluster >= c.size() || c.cluster_of(w.i) != w.cluster ||
      c.cluster_of(w.j) != w.cluster) {
    return reject(WitnessCondition::Membership,
                  "seed vertices " + std::to_string(w.i) + "," + std::to_string(w.j) +
                      " are not both in cluster " + std::to_string(w.cluster));
  }
  if (!first.s.contains(w.i) || !first.s_prime.contains(w.j)) {
    return reject(WitnessCondition::Membership, "seed vertices are not in the first sets");
  }

  WitnessCheck ok;
  ok.valid = true;
  ok.seed_in_cycle = w.cycle.front().s.contains(w.i) && w.cycle.front().s_prime.contains(w.j);
  return ok;
}

std::vector<std::string> witness_sequence(const Witness& w, std::size_t length) {
  std::vector<std::string> out;
  out.reserve(length);
  for (std::size_t t = 0; t < length; ++t) {
    if (t < w.prefix.size()) {
      out.push_back(w.prefix[t].matrix);
    } else {
      out.push_back(w.cycle[(t - w.prefix.size()) % w.cycle.size()].matrix);
    }
  }
  return out;
}

}  // namespace ccons
