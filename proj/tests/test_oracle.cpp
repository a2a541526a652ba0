#include "doctest.h"

#include "ccons/error.hpp"
#include "ccons/oracle.hpp"

#include <vector>

using namespace ccons;

TEST_CASE("generators meet their regimes") {
  gen::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen::uniform_int(rng, 2, 6);
    const int k = gen::uniform_int(rng, 1, std::min(3, n));
    const auto c = gen::random_clustering(rng, n, k);

    const MatrixSet a123({gen::symmetric_pattern_matrix(rng, c)}, c);
    const auto ra = check_assumptions(a123);
    CHECK(ra.regime == Regime::A123);
    CHECK(ra.common_influence);

    const MatrixSet a14({gen::doubly_stochastic_matrix(rng, c)}, c);
    const auto rb = check_assumptions(a14);
    CHECK(rb.a1_self_loops);
    CHECK(rb.a4_doubly_stochastic);
    CHECK(rb.regime != Regime::None);
    CHECK(rb.common_influence);
    CHECK(rb.cut_balance_constant == 1.0);
  }
}

TEST_CASE("symmetric-pattern clusters are internally connected") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen::uniform_int(rng, 2, 6);
    const auto c = gen::random_clustering(rng, n, gen::uniform_int(rng, 1, std::min(3, n)));
    const auto p = gen::symmetric_pattern_matrix(rng, c);
    for (int k = 0; k < c.size(); ++k) {
      const auto& m = c.cluster(k);
      std::vector<bool> seen(n, false);
      std::vector<int> stack = {m[0]};
      seen[m[0]] = true;
      int reached = 1;
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : m) {
          if (!seen[v] && p(u, v) > 0.0) {
            seen[v] = true;
            ++reached;
            stack.push_back(v);
          }
        }
      }
      CHECK(reached == static_cast<int>(m.size()));
    }
  }
}

TEST_CASE("random clustering") {
  gen::Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen::uniform_int(rng, 1, 10);
    const int k = gen::uniform_int(rng, 1, n);
    CHECK(gen::random_clustering(rng, n, k).size() == k);
  }
  CHECK_THROWS_AS(gen::random_clustering(rng, 3, 4), Error);
}

TEST_CASE("harness agrees on a small batch") {
  OracleConfig config;
  config.cases = 40;
  config.n = 4;
  config.clusters = 2;
  const auto summary = run_oracle(config);
  CHECK(summary.cases.size() == 40);
  CHECK(summary.disagreements == 0);
  CHECK(summary.consensus + summary.not_consensus == 40);
  CHECK(summary.regime_a123 > 0);
  CHECK(summary.regime_a14 > 0);
  CHECK(summary.spanning_tree_violations == 0);
  for (std::size_t k = 0; k < summary.cases.size(); ++k) CHECK(summary.cases[k].index == static_cast<int>(k));
}

TEST_CASE("harness is deterministic") {
  OracleConfig config;
  config.cases = 10;
  config.n = 3;
  config.clusters = 0;
  const auto a = run_oracle(config);
  const auto b = run_oracle(config);
  for (std::size_t k = 0; k < a.cases.size(); ++k) {
    CHECK(a.cases[k].verdict == b.cases[k].verdict);
    CHECK(a.cases[k].final_tau == b.cases[k].final_tau);
    CHECK(a.cases[k].witness == b.cases[k].witness);
  }
}

TEST_CASE("harness rejects out-of-range configs") {
  OracleConfig config;
  config.n = 6;
  CHECK_THROWS_AS(run_oracle(config), Error);
  config.n = 1;
  CHECK_THROWS_AS(run_oracle(config), Error);
  config.n = 3;
  config.clusters = 4;
  CHECK_THROWS_AS(run_oracle(config), Error);
}

TEST_CASE("disabling dead-state removal produces disagreements") {
  OracleConfig config;
  config.cases = 30;
  config.inject_no_fixpoint = true;
  CHECK(run_oracle(config).disagreements > 0);
}
