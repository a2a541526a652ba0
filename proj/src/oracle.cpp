#include "ccons/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ccons/error.hpp"
#include "ccons/graph.hpp"
#include "ccons/simulator.hpp"

namespace ccons {

namespace gen {

double uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

namespace {

template <class T>
void shuffle(Rng& rng, std::vector<T>& v) {
  for (std::size_t k = v.size(); k > 1; --k) {
    std::swap(v[k - 1], v[rng() % k]);
  }
}

// Rows must sum to one within row_sum_tol; renormalize away accumulated
// rounding before validation.
StochasticMatrix finish(RawMatrix raw) {
  for (auto& row : raw) {
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    for (double& x : row) x /= sum;
  }
  return validate_stochastic(raw);
}

}  // namespace

Clustering random_clustering(Rng& rng, int n, int k) {
  if (k < 1 || k > n) fail(ErrorCode::InvalidArgument, "need 1 <= K <= n");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(rng, order);
  // k-1 distinct cut points in 1..n-1.
  std::vector<int> cuts(n - 1);
  std::iota(cuts.begin(), cuts.end(), 1);
  shuffle(rng, cuts);
  cuts.resize(k - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(n);
  std::vector<std::vector<int>> sets;
  int start = 0;
  for (int cut : cuts) {
    sets.emplace_back(order.begin() + start, order.begin() + cut);
    start = cut;
  }
  return validate_clustering(sets, n);
}

StochasticMatrix random_stochastic(Rng& rng, int n, double density) {
  RawMatrix raw(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (uniform(rng) < density) raw[i][j] = 0.05 + uniform(rng);
    }
    if (std::all_of(raw[i].begin(), raw[i].end(), [](double x) { return x == 0.0; })) {
      raw[i][uniform_int(rng, 0, n - 1)] = 1.0;
    }
  }
  return finish(std::move(raw));
}

StochasticMatrix common_influence_matrix(Rng& rng, const Clustering& c, double density) {
  const int n = c.n();
  const int K = c.size();
  RawMatrix raw(n, std::vector<double>(n, 0.0));
  for (int k = 0; k < K; ++k) {
    std::vector<double> block(K, 0.0);
    for (int kk = 0; kk < K; ++kk) {
      if (kk == k || uniform(rng) < density) block[kk] = 0.05 + uniform(rng);
    }
    const double total = std::accumulate(block.begin(), block.end(), 0.0);
    for (double& b : block) b /= total;

    for (int i : c.cluster(k)) {
      for (int kk = 0; kk < K; ++kk) {
        if (block[kk] == 0.0) continue;
        const auto& target = c.cluster(kk);
        std::vector<double> w(target.size(), 0.0);
        for (double& x : w) {
          if (uniform(rng) < density) x = 0.05 + uniform(rng);
        }
        if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) {
          w[rng() % w.size()] = 1.0;
        }
        const double mass = std::accumulate(w.begin(), w.end(), 0.0);
        for (std::size_t t = 0; t < target.size(); ++t) raw[i][target[t]] = block[kk] * w[t] / mass;
      }
    }
  }
  return finish(std::move(raw));
}

StochasticMatrix symmetric_pattern_matrix(Rng& rng, const Clustering& c) {
  const int n = c.n();
  const int K = c.size();
  std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
  for (int v = 0; v < n; ++v) edge[v][v] = true;

  // Connected pattern inside each cluster: a random tree, then extra edges.
  // Without the tree a cluster can only mix through its neighbors and the
  // contraction rate can get arbitrarily close to 1.
  for (int k = 0; k < K; ++k) {
    const auto& m = c.cluster(k);
    for (std::size_t a = 1; a < m.size(); ++a) {
      const int parent = m[rng() % a];
      edge[m[a]][parent] = edge[parent][m[a]] = true;
    }
    for (std::size_t a = 0; a < m.size(); ++a) {
      for (std::size_t b = a + 1; b < m.size(); ++b) {
        if (uniform(rng) < 0.5) edge[m[a]][m[b]] = edge[m[b]][m[a]] = true;
      }
    }
  }

  // Coupled cluster pairs get a bipartite pattern without isolated vertices,
  // which every row of both clusters needs for its block mass.
  std::vector<std::vector<bool>> coupled(K, std::vector<bool>(K, false));
  for (int a = 0; a < K; ++a) {
    for (int b = a + 1; b < K; ++b) {
      if (uniform(rng) >= 0.4) continue;
      coupled[a][b] = coupled[b][a] = true;
      const auto& ma = c.cluster(a);
      const auto& mb = c.cluster(b);
      for (int u : ma) {
        for (int v : mb) {
          if (uniform(rng) < 0.5) edge[u][v] = edge[v][u] = true;
        }
      }
      for (int u : ma) {
        if (std::none_of(mb.begin(), mb.end(), [&](int v) { return edge[u][v]; })) {
          const int v = mb[rng() % mb.size()];
          edge[u][v] = edge[v][u] = true;
        }
      }
      for (int v : mb) {
        if (std::none_of(ma.begin(), ma.end(), [&](int u) { return edge[v][u]; })) {
          const int u = ma[rng() % ma.size()];
          edge[u][v] = edge[v][u] = true;
        }
      }
    }
  }

  RawMatrix raw(n, std::vector<double>(n, 0.0));
  for (int k = 0; k < K; ++k) {
    std::vector<double> block(K, 0.0);
    double outside = 0.0;
    for (int kk = 0; kk < K; ++kk) {
      if (coupled[k][kk]) {
        block[kk] = 0.1 * uniform_int(rng, 1, 3);
        outside += block[kk];
      }
    }
    if (outside > 0.6) {
      for (double& b : block) b *= 0.6 / outside;
      outside = 0.6;
    }
    block[k] = 1.0 - outside;

    for (int i : c.cluster(k)) {
      for (int kk = 0; kk < K; ++kk) {
        if (block[kk] == 0.0) continue;
        double mass = 0.0;
        std::vector<double> w(n, 0.0);
        for (int j : c.cluster(kk)) {
          if (edge[i][j]) {
            w[j] = uniform_int(rng, 1, 3);
            mass += w[j];
          }
        }
        for (int j : c.cluster(kk)) raw[i][j] = block[kk] * w[j] / mass;
      }
    }
  }
  return finish(std::move(raw));
}

StochasticMatrix doubly_stochastic_matrix(Rng& rng, const Clustering& c) {
  const int n = c.n();
  const int K = c.size();
  const int perms = uniform_int(rng, 1, 2);
  const double self = 0.1 * uniform_int(rng, 3, 5);

  std::vector<double> weights(perms, (1.0 - self) / perms);
  RawMatrix raw(n, std::vector<double>(n, 0.0));
  for (int v = 0; v < n; ++v) raw[v][v] += self;

  for (int p = 0; p < perms; ++p) {
    // Cluster-level bijection: swap two equally sized clusters at random.
    std::vector<int> target(K);
    std::iota(target.begin(), target.end(), 0);
    if (K >= 2 && uniform(rng) < 0.3) {
      const int a = uniform_int(rng, 0, K - 1);
      const int b = uniform_int(rng, 0, K - 1);
      if (a != b && c.cluster(a).size() == c.cluster(b).size()) std::swap(target[a], target[b]);
    }
    for (int k = 0; k < K; ++k) {
      std::vector<int> image = c.cluster(target[k]);
      shuffle(rng, image);
      const auto& src = c.cluster(k);
      for (std::size_t t = 0; t < src.size(); ++t) raw[src[t]][image[t]] += weights[p];
    }
  }
  return finish(std::move(raw));
}

MatrixSet random_matrix_set(Rng& rng, const Clustering& c, int count, Profile profile) {
  if (profile == Profile::Mixed) profile = uniform(rng) < 0.5 ? Profile::A123 : Profile::A14;
  std::vector<StochasticMatrix> mats;
  for (int m = 0; m < count; ++m) {
    mats.push_back(profile == Profile::A123 ? symmetric_pattern_matrix(rng, c)
                                            : doubly_stochastic_matrix(rng, c));
  }
  return MatrixSet(std::move(mats), c);
}

}  // namespace gen

OracleCase evaluate_case(const MatrixSet& set, const OracleConfig& config, std::uint64_t case_seed) {
  OracleCase out;
  out.n = set.n();
  out.clusters = set.clustering().size();
  out.matrices = set.size();
  const int n = set.n();

  try {
    const AssumptionReport report = check_assumptions(set, 0);
    out.regime = report.regime;
    DecideOptions options;
    options.skip_liveness_fixpoint = config.inject_no_fixpoint;
    const DecisionResult result = decide(set, report, options);
    out.verdict = result.verdict;

    if (result.verdict == Verdict::ConsensusSet) {
      const auto seq = random_sequence(set, case_seed, config.horizon);
      out.final_tau = forward_product_check(seq, set, config.horizon).tau.back();

      gen::Rng rng(case_seed ^ 0x9e3779b97f4a7c15ULL);
      std::vector<double> x0(n);
      for (double& x : x0) x = gen::uniform(rng);
      const auto traj = run(x0, policy::UniformRandom{case_seed + 1}, set, config.horizon);
      out.final_spread = traj.spread_log.back();

      for (const auto& p : set.matrices()) {
        if (!has_cluster_spanning_trees(graph_of(p), set.clustering()).holds) out.spanning_trees = false;
      }
      out.agree = out.final_tau < config.eps && out.final_spread < config.eps;
      if (!out.agree) out.note = "consensus verdict but products did not contract";
    } else if (result.verdict == Verdict::NotConsensusSet) {
      const Witness& w = *result.witness;
      out.witness = w;
      const auto check = verify_witness(w, set);
      int replay_steps = 2;
      for (int k = 0; k < n; ++k) replay_steps *= 3;
      const auto supports =
          support_trajectories(w.i, w.j, witness_sequence(w, static_cast<std::size_t>(replay_steps)),
                               set, replay_steps);
      const int horizon = std::max(config.horizon, replay_steps);
      const auto traj =
          run(witness_initial_state(w, n), policy::WitnessReplay{w}, set, horizon);
      out.min_replay_spread = *std::min_element(traj.spread_log.begin(), traj.spread_log.end());

      out.agree = check.valid && w.length() <= witness_length_bound(n) &&
                  supports.disjoint_throughout && out.min_replay_spread >= config.replay_spread;
      if (!check.valid) {
        out.note = "witness rejected: " + std::string(to_string(check.violated));
      } else if (!supports.disjoint_throughout) {
        out.note = "replayed supports intersect";
      } else if (!out.agree) {
        out.note = "replay spread collapsed";
      }
    } else {
      out.note = "generator produced a set outside both regimes";
    }
  } catch (const Error& e) {
    out.agree = false;
    out.note = std::string(to_string(e.code())) + ": " + e.what();
  }
  return out;
}

OracleSummary run_oracle(const OracleConfig& config) {
  if (config.n < 2 || config.n > kOracleMaxN) {
    fail(ErrorCode::InvalidArgument, "oracle supports 2 <= n <= " + std::to_string(kOracleMaxN));
  }
  if (config.clusters < 0 || config.clusters > config.n) {
    fail(ErrorCode::InvalidArgument, "cluster count must lie in 0..n");
  }
  if (config.max_matrices < 1 || config.cases < 0) {
    fail(ErrorCode::InvalidArgument, "need at least one matrix per set and a nonnegative case count");
  }

  OracleSummary summary;
  for (int index = 0; index < config.cases; ++index) {
    const std::uint64_t case_seed = config.seed * 1000003ULL + static_cast<std::uint64_t>(index);
    gen::Rng rng(case_seed);
    const int k = config.clusters > 0 ? config.clusters
                                      : gen::uniform_int(rng, 1, std::min(3, config.n));
    const Clustering c = gen::random_clustering(rng, config.n, k);
    const int count = gen::uniform_int(rng, 1, config.max_matrices);
    gen::Profile profile = config.profile;
    if (profile == gen::Profile::Mixed) profile = index % 2 == 0 ? gen::Profile::A123 : gen::Profile::A14;
    const MatrixSet set = gen::random_matrix_set(rng, c, count, profile);

    OracleCase oc = evaluate_case(set, config, case_seed);
    oc.index = index;
    if (!oc.agree) ++summary.disagreements;
    if (oc.verdict == Verdict::ConsensusSet) {
      ++summary.consensus;
      if (!oc.spanning_trees) ++summary.spanning_tree_violations;
    }
    if (oc.verdict == Verdict::NotConsensusSet) ++summary.not_consensus;
    if (oc.regime == Regime::A123) ++summary.regime_a123;
    if (oc.regime == Regime::A14) ++summary.regime_a14;
    summary.cases.push_back(std::move(oc));
  }
  return summary;
}

}  // namespace ccons
