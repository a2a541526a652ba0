#include <cmath>

#include "doctest.h"

#include "ccons/ergodicity.hpp"
#include "ccons/error.hpp"
#include "ccons/oracle.hpp"
#include "helpers.hpp"

using namespace ccons;
using ccons::testing::make_set;

TEST_CASE("tau_c on small matrices") {
  const auto single = Clustering::single(2);
  CHECK(tau_c(validate_stochastic({{0.5, 0.5}, {0.25, 0.75}}), single).value == doctest::Approx(0.25));
  CHECK(tau_c(StochasticMatrix::identity(2), single).value == 1.0);
  CHECK(dobrushin(validate_stochastic({{0.9, 0.1}, {0.1, 0.9}})) == doctest::Approx(0.8));
  CHECK(dobrushin(validate_stochastic({{0.3, 0.7}, {0.3, 0.7}})) == 0.0);

  const auto c = validate_clustering({{0, 1}, {2}}, 3);
  const auto p = validate_stochastic({{0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}, {1, 0, 0}});
  CHECK(tau_c(p, c).value == 0.0);
}

TEST_CASE("tau_c reports the first maximizing pair") {
  const auto c = validate_clustering({{2, 3}, {0, 1}}, 4);
  const auto p = StochasticMatrix::identity(4);
  const auto v = tau_c(p, c);
  CHECK(v.value == 1.0);
  CHECK(v.arg_cluster == 0);
  CHECK(v.arg_pair == std::pair{2, 3});

  const auto q = validate_stochastic(
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0.5, 0.5, 0, 0}, {0.5, 0.5, 0, 0}});
  const auto w = tau_c(q, c);
  CHECK(w.arg_cluster == 1);
  CHECK(w.arg_pair == std::pair{0, 1});
  CHECK_THROWS_AS(tau_c(q, Clustering::single(3)), Error);
}

TEST_CASE("tau_c range, zero characterization and refinement") {
  gen::Rng rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = gen::uniform_int(rng, 2, 9);
    const int k = gen::uniform_int(rng, 1, std::min(3, n));
    const auto c = gen::random_clustering(rng, n, k);
    const auto p = gen::random_stochastic(rng, n, 0.5);
    const double t = tau_c(p, c).value;
    CHECK(t >= 0.0);
    CHECK(t <= 1.0);

    bool rows_equal = true;
    for (const auto& members : c.clusters()) {
      for (int v : members) {
        for (int s = 0; s < n; ++s) {
          if (std::abs(p(v, s) - p(members.front(), s)) > p.tolerances().zero_tol) rows_equal = false;
        }
      }
    }
    CHECK((t == 0.0) == rows_equal);

    // Splitting every cluster into singletons-plus-rest never raises tau.
    std::vector<std::vector<int>> finer;
    for (const auto& members : c.clusters()) {
      finer.push_back({members.front()});
      if (members.size() > 1) finer.emplace_back(members.begin() + 1, members.end());
    }
    CHECK(tau_c(p, validate_clustering(finer, n)).value <= t);
    CHECK(tau_c(p, c).value <= dobrushin(p));
  }

  // A matrix with equal rows inside each cluster has tau 0.
  const auto c = validate_clustering({{0, 2}, {1, 3}}, 4);
  const auto p = validate_stochastic(
      {{0.1, 0.2, 0.3, 0.4}, {0.4, 0.3, 0.2, 0.1}, {0.1, 0.2, 0.3, 0.4}, {0.4, 0.3, 0.2, 0.1}});
  CHECK(tau_c(p, c).value == 0.0);
  CHECK(dobrushin(p) > 0.0);
}

TEST_CASE("variational form: closed form against subset enumeration") {
  gen::Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen::uniform_int(rng, 1, 10);
    const auto p = gen::random_stochastic(rng, n, 0.6);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double closed = half_l1_variational(p, i, j, VariationalMode::ClosedForm);
        const double exhaustive = half_l1_variational(p, i, j, VariationalMode::Exhaustive);
        CHECK(std::abs(closed - exhaustive) <= 1e-12);
        double l1 = 0;
        for (int s = 0; s < n; ++s) l1 += std::abs(p(i, s) - p(j, s));
        CHECK(std::abs(closed - 0.5 * l1) <= 1e-12);
      }
    }
  }
  const auto p = StochasticMatrix::identity(3);
  CHECK_THROWS_AS(half_l1_variational(p, 0, 3, VariationalMode::ClosedForm), Error);
  CHECK_THROWS_AS(half_l1_variational(StochasticMatrix::identity(21), 0, 1, VariationalMode::Exhaustive),
                  Error);
}

TEST_CASE("submultiplicativity under common influence") {
  gen::Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = gen::uniform_int(rng, 3, 8);
    const int k = gen::uniform_int(rng, 1, 3);
    const auto c = gen::random_clustering(rng, n, k);
    const double density = 0.3 + 0.7 * gen::uniform(rng);
    const auto p1 = gen::common_influence_matrix(rng, c, density);
    const auto p2 = gen::common_influence_matrix(rng, c, density);
    const double lhs = tau_c(matrix_product(p1, p2), c).value;
    const double t1 = tau_c(p1, c).value;
    const double t2 = tau_c(p2, c).value;
    CHECK(lhs <= t1 * t2 + 1e-12);
    CHECK(lhs <= std::min(t1, t2) + 1e-12);
  }
}

TEST_CASE("product_tau_decay along a common-influence sequence") {
  gen::Rng rng(8);
  const auto c = gen::random_clustering(rng, 6, 2);
  std::vector<StochasticMatrix> mats;
  for (int m = 0; m < 3; ++m) mats.push_back(gen::common_influence_matrix(rng, c, 0.7));
  const MatrixSet set(mats, c);
  std::vector<int> seq;
  for (int t = 0; t < 10; ++t) seq.push_back(gen::uniform_int(rng, 0, 2));

  for (auto order : {ProductOrder::Forward, ProductOrder::Backward}) {
    const auto decay = product_tau_decay(seq, set, order);
    REQUIRE(decay.size() == seq.size());
    // Recompute each prefix product directly.
    StochasticMatrix prod = set.matrix(seq[0]);
    for (std::size_t t = 1; t < seq.size(); ++t) {
      CHECK(decay[t].value <= decay[t - 1].value + 1e-12);
      CHECK(decay[t].value <= decay[t - 1].value * tau_c(set.matrix(seq[t]), c).value + 1e-12);
      prod = order == ProductOrder::Forward ? matrix_product(set.matrix(seq[t]), prod)
                                            : matrix_product(prod, set.matrix(seq[t]));
      CHECK(std::abs(tau_c(prod, c).value - decay[t].value) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(product_tau_decay({}, set, ProductOrder::Forward), Error);
  CHECK_THROWS_AS(product_tau_decay({0, 3}, set, ProductOrder::Forward), Error);
}

TEST_CASE("product order matters") {
  const auto set = make_set({{{0.5, 0.5, 0}, {0, 1, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 0, 1}, {0, 0, 1}}},
                            {{0, 1, 2}});
  const auto fwd = product_tau_decay({0, 1}, set, ProductOrder::Forward);
  const auto bwd = product_tau_decay({0, 1}, set, ProductOrder::Backward);
  // Forward: P1*P0 = [[.5,.5,0],[0,0,1],[0,0,1]], tau 1.
  // Backward: P0*P1 = [[.5,0,.5],[0,0,1],[0,0,1]], tau .5.
  CHECK(fwd[1].value == doctest::Approx(1.0));
  CHECK(bwd[1].value == doctest::Approx(0.5));
}
