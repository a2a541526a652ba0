#include <cmath>

#include "doctest.h"

#include "ccons/error.hpp"
#include "ccons/graph.hpp"
#include "ccons/oracle.hpp"
#include "ccons/simulator.hpp"
#include "helpers.hpp"

using namespace ccons;
using ccons::testing::load_fixture;
using ccons::testing::make_set;

TEST_CASE("step and spread") {
  const auto p = validate_stochastic({{0.5, 0.5}, {0, 1}});
  const std::vector<double> x{0.0, 1.0};
  CHECK(step(x, p) == std::vector<double>{0.5, 1.0});
  const auto c = validate_clustering({{0, 2}, {1}}, 3);
  CHECK(cluster_spread(std::vector<double>{0.1, 5.0, 0.4}, c) == doctest::Approx(0.3));
  CHECK_THROWS_AS(step(std::vector<double>{1.0}, p), Error);
}

TEST_CASE("uniform averaging converges") {
  const auto set = load_fixture("uniform.json");
  const std::vector<double> x0{0.0, 1.0};
  const auto traj = run(x0, policy::Periodic{{"U"}}, set, 200);
  CHECK(traj.states.size() == 201);
  CHECK(traj.policy_log.size() == 200);
  const auto profile = detect_cluster_consensus(traj, set.clustering(), 1e-6);
  CHECK(profile.converged);
  CHECK(profile.convergence_time == 1);
  REQUIRE(profile.per_cluster_values);
  CHECK((*profile.per_cluster_values)[0] == doctest::Approx(0.5));
}

TEST_CASE("identity under witness replay keeps spread 1") {
  const auto set = load_fixture("identity.json");
  const auto w = *decide(set).witness;
  const auto x0 = witness_initial_state(w, 2);
  CHECK(x0 == std::vector<double>{0.0, 1.0});
  const auto traj = run(x0, policy::WitnessReplay{w}, set, 50);
  for (double s : traj.spread_log) CHECK(s == 1.0);
  const auto profile = detect_cluster_consensus(traj, set.clustering(), 1e-6);
  CHECK_FALSE(profile.converged);
  CHECK_FALSE(profile.per_cluster_values);
  CHECK_FALSE(profile.convergence_time);
}

TEST_CASE("convergence window") {
  Trajectory t;
  for (int k = 0; k <= 100; ++k) {
    t.states.push_back({0.0});
    t.spread_log.push_back(k < 95 ? 1.0 : 0.0);
    if (k > 0) t.policy_log.push_back("P");
  }
  const auto c = Clustering::single(1);
  auto prof = detect_cluster_consensus(t, c, 1e-6);
  CHECK(prof.convergence_time == 95);
  // Window is max(10, 100/10) = 10 steps, but only the last 6 are settled.
  CHECK_FALSE(prof.converged);
  t.spread_log[90] = t.spread_log[91] = t.spread_log[92] = t.spread_log[93] = t.spread_log[94] = 0.0;
  t.spread_log[89] = 1.0;
  prof = detect_cluster_consensus(t, c, 1e-6);
  CHECK(prof.converged);
  CHECK(prof.convergence_time == 90);
  CHECK_THROWS_AS(detect_cluster_consensus(t, c, 0.0), Error);
}

TEST_CASE("policies") {
  const auto set = load_fixture("block_diagonal.json");
  const std::vector<double> x0{0, 1, 2, 3};
  SUBCASE("fixed sequence must cover the horizon") {
    CHECK_THROWS_AS(run(x0, policy::FixedSequence{{"P1"}}, set, 2), Error);
    const auto t = run(x0, policy::FixedSequence{{"P1", "P2", "P1"}}, set, 2);
    CHECK(t.policy_log == std::vector<std::string>{"P1", "P2"});
  }
  SUBCASE("periodic") {
    const auto t = run(x0, policy::Periodic{{"P2", "P1"}}, set, 3);
    CHECK(t.policy_log == std::vector<std::string>{"P2", "P1", "P2"});
    CHECK_THROWS_AS(run(x0, policy::Periodic{{}}, set, 3), Error);
  }
  SUBCASE("unknown names") {
    CHECK_THROWS_AS(run(x0, policy::Periodic{{"Q"}}, set, 3), Error);
  }
  SUBCASE("random is reproducible") {
    const auto a = run(x0, policy::UniformRandom{42}, set, 100);
    const auto b = run(x0, policy::UniformRandom{42}, set, 100);
    const auto c = run(x0, policy::UniformRandom{43}, set, 100);
    CHECK(trajectory_csv(a) == trajectory_csv(b));
    CHECK(a.policy_log != c.policy_log);
    CHECK(a.policy_log == random_sequence(set, 42, 100));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(run(std::vector<double>{1.0}, policy::UniformRandom{1}, set, 3), Error);
  }
}

TEST_CASE("csv format") {
  const auto set = load_fixture("uniform.json");
  const auto traj = run(std::vector<double>{0.0, 1.0}, policy::Periodic{{"U"}}, set, 1);
  CHECK(trajectory_csv(traj) == "t,matrix,spread,x_0,x_1\n0,,1,0,1\n1,U,0,0.5,0.5\n");
  Trajectory odd;
  odd.states = {{0.1}, {0.1}};
  odd.spread_log = {0, 0};
  odd.policy_log = {"a,\"b\""};
  CHECK(trajectory_csv(odd) == "t,matrix,spread,x_0\n0,,0,0.10000000000000001\n1,\"a,\"\"b\"\"\",0,0.10000000000000001\n");
}

TEST_CASE("forward products contract on the positive fixture") {
  const auto set = load_fixture("block_diagonal.json");
  const auto seq = random_sequence(set, 9, 200);
  const auto check = forward_product_check(seq, set, 200);
  CHECK(check.tau.size() == 200);
  CHECK(check.tau.back() < 1e-6);
  REQUIRE(check.limit_rows);
  CHECK(check.limit_rows->size() == 2);
  CHECK(std::abs((*check.limit_rows)[0][0] - 0.5) < 1e-9);
  CHECK_THROWS_AS(forward_product_check({}, set, 3), Error);
}

TEST_CASE("numeric supports follow graph images") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen::uniform_int(rng, 2, 8);
    std::vector<StochasticMatrix> mats;
    const int count = gen::uniform_int(rng, 1, 3);
    for (int m = 0; m < count; ++m) {
      // Quarter-grid entries keep every product exactly representable.
      RawMatrix raw(n, std::vector<double>(n, 0.0));
      for (auto& row : raw) {
        for (int q = 0; q < 4; ++q) row[gen::uniform_int(rng, 0, n - 1)] += 0.25;
      }
      mats.push_back(validate_stochastic(raw));
    }
    const MatrixSet set(mats, Clustering::single(n));
    const int i = gen::uniform_int(rng, 0, n - 1);
    const int j = gen::uniform_int(rng, 0, n - 1);
    const auto seq = random_sequence(set, rng(), 2 * n);
    SupportTrace trace;
    CHECK_NOTHROW(trace = support_trajectories(i, j, seq, set, 2 * n));
    CHECK(trace.numeric_checked_steps == 2 * n);

    // Recompute N^t({i}) step by step from the graphs.
    VertexSet s = VertexSet::single(i);
    for (int t = 0; t < 2 * n; ++t) {
      s = out_neighbors(graph_of(set.matrix(set.index_of(seq[t]))), s);
      CHECK(trace.supports[t].s == s);
    }
  }
}

TEST_CASE("support trace flags intersections and arguments") {
  const auto set = load_fixture("uniform.json");
  const auto trace = support_trajectories(0, 1, {"U"}, set, 3);
  CHECK_FALSE(trace.disjoint_throughout);
  CHECK_THROWS_AS(support_trajectories(0, 2, {"U"}, set, 3), Error);
  CHECK_THROWS_AS(support_trajectories(0, 1, {}, set, 3), Error);

  const auto id = load_fixture("identity.json");
  const auto kept = support_trajectories(0, 1, {"I"}, id, 40, 0);
  CHECK(kept.disjoint_throughout);
  CHECK(kept.numeric_checked_steps == 0);
  CHECK(kept.supports.size() == 40);
}

TEST_CASE("witness replay keeps a split cluster apart") {
  const auto set = load_fixture("disjoint_averaging.json");
  const auto w = *decide(set).witness;
  const auto traj = run(witness_initial_state(w, set.n()), policy::WitnessReplay{w}, set, 200);
  for (double s : traj.spread_log) CHECK(s >= 0.5);
}
