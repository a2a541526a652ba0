#include "ccons/ergodicity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "ccons/error.hpp"

namespace ccons {

CoefficientValue tau_c(const StochasticMatrix& p, const Clustering& c) {
  if (p.n() != c.n()) fail(ErrorCode::DimensionMismatch, "matrix and clustering sizes differ");
  CoefficientValue best;
  best.arg_cluster = 0;
  best.arg_pair = {c.cluster(0).front(), c.cluster(0).front()};
  double best_l1 = 0.0;

  for (int k = 0; k < c.size(); ++k) {
    const auto& members = c.cluster(k);
    for (std::size_t a = 0; a < members.size(); ++a) {
      auto ri = p.row(members[a]);
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        auto rj = p.row(members[b]);
        double l1 = 0.0;
        for (int s = 0; s < p.n(); ++s) l1 += std::abs(ri[s] - rj[s]);
        if (l1 > best_l1) {
          best_l1 = l1;
          best.arg_cluster = k;
          best.arg_pair = {members[a], members[b]};
        }
      }
    }
  }
  best.value = std::clamp(0.5 * best_l1, 0.0, 1.0);
  return best;
}

double dobrushin(const StochasticMatrix& p) {
  return tau_c(p, Clustering::single(p.n())).value;
}

double half_l1_variational(const StochasticMatrix& p, int i, int j, VariationalMode mode) {
  const int n = p.n();
  if (i < 0 || i >= n || j < 0 || j >= n) {
    fail(ErrorCode::IndexOutOfRange, "row pair (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") for n=" + std::to_string(n));
  }
  if (mode == VariationalMode::ClosedForm) {
    double total = 0.0;
    for (int s = 0; s < n; ++s) total += std::max(p(i, s) - p(j, s), 0.0);
    return total;
  }
  if (n > 20) fail(ErrorCode::DimensionTooLarge, "exhaustive mode needs n <= 20");

  // sums[A] built from sums[A minus its lowest element]; the empty set gives 0.
  const std::uint32_t count = std::uint32_t{1} << n;
  std::vector<double> sums(count, 0.0);
  double best = 0.0;
  for (std::uint32_t a = 1; a < count; ++a) {
    const int s = std::countr_zero(a);
    sums[a] = sums[a & (a - 1)] + (p(i, s) - p(j, s));
    best = std::max(best, sums[a]);
  }
  return best;
}

std::vector<CoefficientValue> product_tau_decay(const std::vector<int>& sequence,
                                                const MatrixSet& set, ProductOrder order) {
  if (sequence.empty()) fail(ErrorCode::EmptySequence, "no matrices to multiply");
  for (int idx : sequence) {
    if (idx < 0 || idx >= set.size()) {
      fail(ErrorCode::IndexOutOfRange, "matrix index " + std::to_string(idx));
    }
  }
  std::vector<CoefficientValue> out;
  out.reserve(sequence.size());
  StochasticMatrix prod = set.matrix(sequence.front());
  out.push_back(tau_c(prod, set.clustering()));
  for (std::size_t t = 1; t < sequence.size(); ++t) {
    const auto& next = set.matrix(sequence[t]);
    prod = order == ProductOrder::Forward ? matrix_product(next, prod) : matrix_product(prod, next);
    out.push_back(tau_c(prod, set.clustering()));
  }
  return out;
}

}  // namespace ccons
