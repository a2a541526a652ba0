#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccons/vertex_set.hpp"

namespace ccons {

struct Tolerances {
  double row_sum_tol = 1e-9;
  /// Entries at or below this magnitude are treated as exactly zero.
  double zero_tol = 1e-12;
  /// Used when comparing block sums and cut ratios.
  double equality_tol = 1e-9;

  /// Throws InvalidArgument unless every field lies in [0, 1e-3).
  void check() const;
  bool operator==(const Tolerances&) const = default;
};

using RawMatrix = std::vector<std::vector<double>>;

/// Nonnegative row-stochastic n x n matrix. Only constructible through
/// validate_stochastic, so every instance satisfies the invariants.
class StochasticMatrix {
 public:
  int n() const { return n_; }
  double operator()(int i, int j) const { return entries_[index(i, j)]; }
  std::span<const double> row(int i) const {
    return {entries_.data() + static_cast<std::size_t>(i) * n_,
            static_cast<std::size_t>(n_)};
  }
  const std::vector<double>& entries() const { return entries_; }
  const Tolerances& tolerances() const { return tol_; }

  /// Entry is strictly positive in the support sense.
  bool positive(int i, int j) const { return (*this)(i, j) > tol_.zero_tol; }

  RawMatrix to_rows() const;

  static StochasticMatrix identity(int n, const Tolerances& tol = {});

  bool operator==(const StochasticMatrix&) const = default;

 private:
  friend StochasticMatrix validate_stochastic(const RawMatrix&, const Tolerances&);
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }

  int n_ = 0;
  std::vector<double> entries_;
  Tolerances tol_;
};

/// Clamps entries in [-zero_tol, zero_tol] to 0 and renormalizes the rows
/// that were touched. Rows that needed no clamping are left bit-identical,
/// which makes the transform idempotent.
StochasticMatrix validate_stochastic(const RawMatrix& raw, const Tolerances& tol = {});

/// Ordered partition of {0, ..., n-1}. Vertices inside a cluster are kept
/// sorted; cluster order is the input order.
class Clustering {
 public:
  int n() const { return n_; }
  int size() const { return static_cast<int>(clusters_.size()); }
  const std::vector<std::vector<int>>& clusters() const { return clusters_; }
  const std::vector<int>& cluster(int k) const { return clusters_[k]; }
  int cluster_of(int v) const { return cluster_of_[v]; }
  VertexSet mask(int k) const { return masks_[k]; }

  static Clustering single(int n);

  bool operator==(const Clustering&) const = default;

 private:
  friend Clustering validate_clustering(const std::vector<std::vector<int>>&, int);

  int n_ = 0;
  std::vector<std::vector<int>> clusters_;
  std::vector<int> cluster_of_;
  std::vector<VertexSet> masks_;
};

Clustering validate_clustering(const std::vector<std::vector<int>>& sets, int n);

/// Finite set of stochastic matrices sharing a dimension and a clustering.
/// Names are unique and used by witnesses and switching policies.
class MatrixSet {
 public:
  MatrixSet(std::vector<StochasticMatrix> matrices, std::vector<std::string> names,
            Clustering clustering);
  /// Names default to P0, P1, ...
  MatrixSet(std::vector<StochasticMatrix> matrices, Clustering clustering);

  int n() const { return clustering_.n(); }
  int size() const { return static_cast<int>(matrices_.size()); }
  const StochasticMatrix& matrix(int m) const { return matrices_[m]; }
  const std::vector<StochasticMatrix>& matrices() const { return matrices_; }
  const std::string& name(int m) const { return names_[m]; }
  const std::vector<std::string>& names() const { return names_; }
  const Clustering& clustering() const { return clustering_; }
  const Tolerances& tolerances() const { return matrices_.front().tolerances(); }

  /// Throws UnknownMatrixName.
  int index_of(std::string_view name) const;

 private:
  std::vector<StochasticMatrix> matrices_;
  std::vector<std::string> names_;
  Clustering clustering_;
};

struct CommonInfluence {
  bool holds = false;
  /// K x K block sums taken from the first vertex of each cluster.
  std::vector<std::vector<double>> block_sums;
};

CommonInfluence has_common_influence(const StochasticMatrix& p, const Clustering& c);

enum class Regime { A123, A14, None };

std::string_view to_string(Regime r);

struct AssumptionReport {
  bool a1_self_loops = false;
  bool a2_symmetric_pattern = false;
  std::optional<double> a3_delta;
  bool a4_doubly_stochastic = false;
  std::optional<double> cut_balance_constant;
  bool common_influence = false;
  Regime regime = Regime::None;
  /// Per matrix, same order as the set.
  std::vector<CommonInfluence> influence;
};

Regime derive_regime(bool a1, bool a2, bool a3, bool a4);

/// Cut balance is only evaluated (exhaustively) when n <= cut_balance_cap.
AssumptionReport check_assumptions(const MatrixSet& set, int cut_balance_cap = 20);

/// Smallest C >= 1 with forward(S) <= C * reverse(S) for every cut S, or
/// nullopt when some cut carries flow one way only. Exhaustive over 2^n cuts.
std::optional<double> check_cut_balance(const StochasticMatrix& p, int cap = 20);

StochasticMatrix matrix_product(const StochasticMatrix& lhs, const StochasticMatrix& rhs);

}  // namespace ccons
