#include "ccons/simulator.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "ccons/error.hpp"
#include "ccons/graph.hpp"

namespace ccons {

namespace {

std::vector<int> resolve(const std::vector<std::string>& names, const MatrixSet& set) {
  std::vector<int> out;
  out.reserve(names.size());
  for (const auto& name : names) out.push_back(set.index_of(name));
  return out;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::vector<double> step(std::span<const double> x, const StochasticMatrix& p) {
  if (static_cast<int>(x.size()) != p.n()) {
    fail(ErrorCode::DimensionMismatch, "state has " + std::to_string(x.size()) + " entries, matrix n=" +
                                           std::to_string(p.n()));
  }
  std::vector<double> out(x.size(), 0.0);
  for (int i = 0; i < p.n(); ++i) {
    auto row = p.row(i);
    double acc = 0.0;
    for (int j = 0; j < p.n(); ++j) acc += row[j] * x[j];
    out[i] = acc;
  }
  return out;
}

double cluster_spread(std::span<const double> x, const Clustering& c) {
  if (static_cast<int>(x.size()) != c.n()) {
    fail(ErrorCode::DimensionMismatch, "state and clustering sizes differ");
  }
  double spread = 0.0;
  for (const auto& members : c.clusters()) {
    double lo = x[members.front()];
    double hi = lo;
    for (int v : members) {
      lo = std::min(lo, x[v]);
      hi = std::max(hi, x[v]);
    }
    spread = std::max(spread, hi - lo);
  }
  return spread;
}

std::vector<std::string> random_sequence(const MatrixSet& set, std::uint64_t seed, int length) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(std::max(length, 0)));
  for (int t = 0; t < length; ++t) {
    out.push_back(set.name(static_cast<int>(rng() % static_cast<std::uint64_t>(set.size()))));
  }
  return out;
}

Trajectory run(std::span<const double> x0, const SwitchingPolicy& policy, const MatrixSet& set,
               int horizon) {
  if (static_cast<int>(x0.size()) != set.n()) {
    fail(ErrorCode::DimensionMismatch, "initial state has " + std::to_string(x0.size()) +
                                           " entries, n=" + std::to_string(set.n()));
  }
  if (horizon < 0) fail(ErrorCode::InvalidArgument, "horizon must be >= 0");

  std::vector<int> schedule;
  schedule.reserve(static_cast<std::size_t>(horizon));
  if (const auto* fixed = std::get_if<policy::FixedSequence>(&policy)) {
    const auto idx = resolve(fixed->names, set);
    if (static_cast<int>(idx.size()) < horizon) {
      fail(ErrorCode::InvalidPolicy, "fixed sequence of length " + std::to_string(idx.size()) +
                                         " is shorter than horizon " + std::to_string(horizon));
    }
    schedule.assign(idx.begin(), idx.begin() + horizon);
  } else if (const auto* periodic = std::get_if<policy::Periodic>(&policy)) {
    const auto idx = resolve(periodic->names, set);
    if (idx.empty()) fail(ErrorCode::InvalidPolicy, "periodic policy needs at least one matrix");
    for (int t = 0; t < horizon; ++t) schedule.push_back(idx[static_cast<std::size_t>(t) % idx.size()]);
  } else if (const auto* random = std::get_if<policy::UniformRandom>(&policy)) {
    schedule = resolve(random_sequence(set, random->seed, horizon), set);
  } else {
    const auto& w = std::get<policy::WitnessReplay>(policy).witness;
    if (w.cycle.empty()) fail(ErrorCode::InvalidPolicy, "witness has an empty cycle");
    for (const auto& s : w.prefix) set.index_of(s.matrix);
    std::vector<int> reversed;
    for (auto it = w.cycle.rbegin(); it != w.cycle.rend(); ++it) {
      reversed.push_back(set.index_of(it->matrix));
    }
    for (int t = 0; t < horizon; ++t) {
      schedule.push_back(reversed[static_cast<std::size_t>(t) % reversed.size()]);
    }
  }

  Trajectory traj;
  traj.states.emplace_back(x0.begin(), x0.end());
  traj.spread_log.push_back(cluster_spread(x0, set.clustering()));
  for (int m : schedule) {
    traj.states.push_back(step(traj.states.back(), set.matrix(m)));
    traj.policy_log.push_back(set.name(m));
    traj.spread_log.push_back(cluster_spread(traj.states.back(), set.clustering()));
  }
  return traj;
}

ConsensusProfile detect_cluster_consensus(const Trajectory& traj, const Clustering& c, double eps) {
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  if (traj.states.empty()) fail(ErrorCode::InvalidArgument, "empty trajectory");

  const int horizon = static_cast<int>(traj.policy_log.size());
  const int window = std::max(10, horizon / 10);
  const int last = static_cast<int>(traj.spread_log.size()) - 1;

  ConsensusProfile profile;
  profile.final_spread = traj.spread_log[last];

  int settled = last + 1;
  while (settled > 0 && traj.spread_log[settled - 1] <= eps) --settled;
  if (settled <= last) profile.convergence_time = settled;

  const int window_start = std::max(0, last + 1 - window);
  profile.converged = settled <= window_start;
  if (profile.converged) {
    const auto& x = traj.states.back();
    std::vector<double> alpha;
    for (const auto& members : c.clusters()) {
      double sum = 0.0;
      for (int v : members) sum += x[v];
      alpha.push_back(sum / static_cast<double>(members.size()));
    }
    profile.per_cluster_values = std::move(alpha);
  }
  return profile;
}

std::vector<double> witness_initial_state(const Witness& w, int n) {
  if (w.cycle.empty()) fail(ErrorCode::InvalidPolicy, "witness has an empty cycle");
  std::vector<double> x(static_cast<std::size_t>(n), 0.5);
  for (int v : w.cycle.front().s.members()) {
    if (v < n) x[v] = 0.0;
  }
  for (int v : w.cycle.front().s_prime.members()) {
    if (v < n) x[v] = 1.0;
  }
  return x;
}

SupportTrace support_trajectories(int i, int j, const std::vector<std::string>& sequence,
                                  const MatrixSet& set, int horizon,
                                  std::optional<int> numeric_horizon) {
  const int n = set.n();
  if (i < 0 || i >= n || j < 0 || j >= n) {
    fail(ErrorCode::IndexOutOfRange, "vertex pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  if (sequence.empty()) fail(ErrorCode::EmptySequence, "no matrices to apply");
  if (horizon < 0) fail(ErrorCode::InvalidArgument, "horizon must be >= 0");
  const auto idx = resolve(sequence, set);
  const int numeric_limit = numeric_horizon.value_or(2 * n);
  const double zero_tol = set.tolerances().zero_tol;

  std::vector<DirectedGraph> graphs;
  for (const auto& p : set.matrices()) graphs.push_back(graph_of(p));

  std::vector<double> ri(n, 0.0);
  std::vector<double> rj(n, 0.0);
  ri[i] = 1.0;
  rj[j] = 1.0;
  PairState current{VertexSet::single(i), VertexSet::single(j)};

  auto numeric_support = [&](const std::vector<double>& r) {
    VertexSet s;
    for (int v = 0; v < n; ++v) {
      if (r[v] > zero_tol) s.insert(v);
    }
    return s;
  };
  auto row_times = [&](const std::vector<double>& r, const StochasticMatrix& p) {
    std::vector<double> out(n, 0.0);
    for (int l = 0; l < n; ++l) {
      if (r[l] == 0.0) continue;
      auto row = p.row(l);
      for (int s = 0; s < n; ++s) out[s] += r[l] * row[s];
    }
    return out;
  };

  SupportTrace trace;
  for (int t = 1; t <= horizon; ++t) {
    const int m = idx[static_cast<std::size_t>(t - 1) % idx.size()];
    current = {out_neighbors(graphs[m], current.s), out_neighbors(graphs[m], current.s_prime)};
    if (t <= numeric_limit) {
      ri = row_times(ri, set.matrix(m));
      rj = row_times(rj, set.matrix(m));
      if (numeric_support(ri) != current.s || numeric_support(rj) != current.s_prime) {
        fail(ErrorCode::SupportMismatch,
             "numeric and graph supports differ at t=" + std::to_string(t) +
                 " (check zero_tol against the smallest positive entry)");
      }
      ++trace.numeric_checked_steps;
    }
    if (!current.s.disjoint(current.s_prime)) trace.disjoint_throughout = false;
    trace.supports.push_back(current);
  }
  return trace;
}

ProductCheck forward_product_check(const std::vector<std::string>& sequence, const MatrixSet& set,
                                   int horizon) {
  if (horizon < 1) fail(ErrorCode::InvalidArgument, "horizon must be >= 1");
  if (sequence.empty()) fail(ErrorCode::EmptySequence, "no matrices to multiply");
  const auto idx = resolve(sequence, set);

  ProductCheck out;
  StochasticMatrix prod = set.matrix(idx.front());
  out.tau.push_back(tau_c(prod, set.clustering()).value);
  for (int t = 2; t <= horizon; ++t) {
    prod = matrix_product(set.matrix(idx[static_cast<std::size_t>(t - 1) % idx.size()]), prod);
    out.tau.push_back(tau_c(prod, set.clustering()).value);
  }
  if (out.tau.back() <= 1e-10) {
    std::vector<std::vector<double>> rows;
    for (const auto& members : set.clustering().clusters()) {
      auto r = prod.row(members.front());
      rows.emplace_back(r.begin(), r.end());
    }
    out.limit_rows = std::move(rows);
  }
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,matrix,spread";
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
  for (std::size_t v = 0; v < n; ++v) out += ",x_" + std::to_string(v);
  out += '\n';
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    out += std::to_string(t);
    out += ',';
    if (t > 0) out += csv_field(traj.policy_log[t - 1]);
    out += ',';
    out += format_real(traj.spread_log[t]);
    for (double x : traj.states[t]) {
      out += ',';
      out += format_real(x);
    }
    out += '\n';
  }
  return out;
}

}  // namespace ccons
