#pragma once

#include <utility>
#include <vector>

#include "ccons/matrix.hpp"

namespace ccons {

struct CoefficientValue {
  double value = 0.0;
  int arg_cluster = 0;
  std::pair<int, int> arg_pair{0, 0};
};

/// Cluster ergodicity coefficient: half the largest L1 distance between two
/// rows of the same cluster. Ties go to the smallest (k, i, j).
CoefficientValue tau_c(const StochasticMatrix& p, const Clustering& c);

/// Dobrushin coefficient, i.e. tau_c with every vertex in one cluster.
double dobrushin(const StochasticMatrix& p);

enum class VariationalMode { ClosedForm, Exhaustive };

/// max over A of sum_{s in A} (p_is - p_js). ClosedForm takes A = {s : p_is > p_js};
/// Exhaustive enumerates all 2^n subsets and is limited to n <= 20.
double half_l1_variational(const StochasticMatrix& p, int i, int j, VariationalMode mode);

/// Forward multiplies new factors on the left (P(t)...P(1)); Backward on the
/// right (P(1)...P(t)).
enum class ProductOrder { Forward, Backward };

/// tau_c of every prefix product of `sequence` (indices into `set`).
std::vector<CoefficientValue> product_tau_decay(const std::vector<int>& sequence,
                                                const MatrixSet& set, ProductOrder order);

}  // namespace ccons
