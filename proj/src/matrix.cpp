#include "ccons/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>

#include "ccons/error.hpp"

namespace ccons {

namespace {

std::string cell(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

void Tolerances::check() const {
  for (double t : {row_sum_tol, zero_tol, equality_tol}) {
    if (!(t >= 0.0 && t < 1e-3)) {
      fail(ErrorCode::InvalidArgument, "tolerances must lie in [0, 1e-3)");
    }
  }
}

RawMatrix StochasticMatrix::to_rows() const {
  RawMatrix rows(n_);
  for (int i = 0; i < n_; ++i) rows[i].assign(row(i).begin(), row(i).end());
  return rows;
}

StochasticMatrix StochasticMatrix::identity(int n, const Tolerances& tol) {
  RawMatrix raw(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) raw[i][i] = 1.0;
  return validate_stochastic(raw, tol);
}

StochasticMatrix validate_stochastic(const RawMatrix& raw, const Tolerances& tol) {
  tol.check();
  const int n = static_cast<int>(raw.size());
  if (n == 0) fail(ErrorCode::NonSquare, "matrix has no rows");
  if (n > kMaxVertices) {
    fail(ErrorCode::DimensionTooLarge,
         "n=" + std::to_string(n) + " exceeds " + std::to_string(kMaxVertices));
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(raw[i].size()) != n) {
      fail(ErrorCode::NonSquare, "row " + std::to_string(i) + " has " +
                                     std::to_string(raw[i].size()) + " entries, expected " +
                                     std::to_string(n));
    }
  }

  StochasticMatrix out;
  out.n_ = n;
  out.tol_ = tol;
  out.entries_.resize(static_cast<std::size_t>(n) * n);

  for (int i = 0; i < n; ++i) {
    double raw_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = raw[i][j];
      if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "entry " + cell(i, j));
      if (v < -tol.zero_tol) {
        fail(ErrorCode::NegativeEntry, "entry " + cell(i, j) + " = " + std::to_string(v));
      }
      raw_sum += v;
    }
    if (std::abs(raw_sum - 1.0) > tol.row_sum_tol) {
      fail(ErrorCode::RowSumViolation,
           "row " + std::to_string(i) + " sums to " + std::to_string(raw_sum));
    }

    double* row = out.entries_.data() + static_cast<std::size_t>(i) * n;
    bool touched = false;
    for (int j = 0; j < n; ++j) {
      row[j] = raw[i][j];
      if (row[j] <= tol.zero_tol && (row[j] != 0.0 || std::signbit(row[j]))) {
        row[j] = 0.0;
        touched = true;
      }
    }
    // Renormalizing can push an entry back under zero_tol; repeat until the
    // row is a fixed point of clamp-then-renormalize.
    while (touched) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j) sum += row[j];
      if (sum <= 0.0) {
        fail(ErrorCode::RowSumViolation, "row " + std::to_string(i) + " is zero after clamping");
      }
      touched = false;
      for (int j = 0; j < n; ++j) {
        row[j] /= sum;
        if (row[j] != 0.0 && row[j] <= tol.zero_tol) {
          row[j] = 0.0;
          touched = true;
        }
      }
    }
  }
  return out;
}

Clustering Clustering::single(int n) {
  std::vector<int> all(n);
  for (int v = 0; v < n; ++v) all[v] = v;
  return validate_clustering({all}, n);
}

Clustering validate_clustering(const std::vector<std::vector<int>>& sets, int n) {
  if (n <= 0) fail(ErrorCode::InvalidArgument, "n must be positive");
  if (n > kMaxVertices) {
    fail(ErrorCode::DimensionTooLarge,
         "n=" + std::to_string(n) + " exceeds " + std::to_string(kMaxVertices));
  }
  Clustering c;
  c.n_ = n;
  c.cluster_of_.assign(n, -1);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    if (sets[k].empty()) fail(ErrorCode::EmptyCluster, "cluster " + std::to_string(k));
    std::vector<int> members = sets[k];
    std::sort(members.begin(), members.end());
    VertexSet mask;
    for (int v : members) {
      if (v < 0 || v >= n) {
        fail(ErrorCode::IndexOutOfRange,
             "vertex " + std::to_string(v) + " in cluster " + std::to_string(k));
      }
      if (c.cluster_of_[v] != -1) {
        fail(ErrorCode::Overlap, "vertex " + std::to_string(v) + " appears more than once");
      }
      c.cluster_of_[v] = static_cast<int>(k);
      mask.insert(v);
    }
    c.clusters_.push_back(std::move(members));
    c.masks_.push_back(mask);
  }
  for (int v = 0; v < n; ++v) {
    if (c.cluster_of_[v] == -1) {
      fail(ErrorCode::NotCovering, "vertex " + std::to_string(v) + " is in no cluster");
    }
  }
  return c;
}

MatrixSet::MatrixSet(std::vector<StochasticMatrix> matrices, std::vector<std::string> names,
                     Clustering clustering)
    : matrices_(std::move(matrices)), names_(std::move(names)), clustering_(std::move(clustering)) {
  if (matrices_.empty()) fail(ErrorCode::InvalidArgument, "matrix set is empty");
  if (names_.size() != matrices_.size()) {
    fail(ErrorCode::InvalidArgument, "one name per matrix is required");
  }
  std::set<std::string> seen;
  for (std::size_t m = 0; m < matrices_.size(); ++m) {
    if (matrices_[m].n() != clustering_.n()) {
      fail(ErrorCode::DimensionMismatch, "matrix '" + names_[m] + "' has n=" +
                                             std::to_string(matrices_[m].n()) +
                                             ", clustering has n=" +
                                             std::to_string(clustering_.n()));
    }
    if (!seen.insert(names_[m]).second) {
      fail(ErrorCode::InvalidArgument, "duplicate matrix name '" + names_[m] + "'");
    }
  }
}

namespace {

std::vector<std::string> default_names(std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t m = 0; m < count; ++m) names.push_back("P" + std::to_string(m));
  return names;
}

}  // namespace

MatrixSet::MatrixSet(std::vector<StochasticMatrix> matrices, Clustering clustering)
    : MatrixSet(matrices, default_names(matrices.size()), std::move(clustering)) {}

int MatrixSet::index_of(std::string_view name) const {
  for (int m = 0; m < size(); ++m) {
    if (names_[m] == name) return m;
  }
  fail(ErrorCode::UnknownMatrixName, "'" + std::string(name) + "'");
}

CommonInfluence has_common_influence(const StochasticMatrix& p, const Clustering& c) {
  if (p.n() != c.n()) fail(ErrorCode::DimensionMismatch, "matrix and clustering sizes differ");
  const int K = c.size();
  const double eq = p.tolerances().equality_tol;

  CommonInfluence out;
  out.holds = true;
  out.block_sums.assign(K, std::vector<double>(K, 0.0));
  for (int k = 0; k < K; ++k) {
    std::vector<double> lo(K, 2.0);
    std::vector<double> hi(K, -1.0);
    for (int i : c.cluster(k)) {
      std::vector<double> sums(K, 0.0);
      auto row = p.row(i);
      for (int j = 0; j < p.n(); ++j) sums[c.cluster_of(j)] += row[j];
      if (i == c.cluster(k).front()) out.block_sums[k] = sums;
      for (int kk = 0; kk < K; ++kk) {
        lo[kk] = std::min(lo[kk], sums[kk]);
        hi[kk] = std::max(hi[kk], sums[kk]);
      }
    }
    for (int kk = 0; kk < K; ++kk) {
      if (kk != k && hi[kk] - lo[kk] > eq) out.holds = false;
    }
  }
  return out;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::A123: return "A123";
    case Regime::A14: return "A14";
    case Regime::None: return "none";
  }
  return "none";
}

Regime derive_regime(bool a1, bool a2, bool a3, bool a4) {
  if (a1 && a2 && a3) return Regime::A123;
  if (a1 && a4) return Regime::A14;
  return Regime::None;
}

AssumptionReport check_assumptions(const MatrixSet& set, int cut_balance_cap) {
  AssumptionReport r;
  r.a1_self_loops = true;
  r.a2_symmetric_pattern = true;
  r.a4_doubly_stochastic = true;
  r.common_influence = true;
  const int n = set.n();

  double delta = 1.0;
  bool any_positive = false;
  for (const auto& p : set.matrices()) {
    const double zt = p.tolerances().zero_tol;
    for (int i = 0; i < n; ++i) {
      if (!p.positive(i, i)) r.a1_self_loops = false;
      double column = 0.0;
      for (int j = 0; j < n; ++j) {
        if (p.positive(i, j) != p.positive(j, i)) r.a2_symmetric_pattern = false;
        if (p(i, j) > zt) {
          any_positive = true;
          delta = std::min(delta, p(i, j));
        }
        column += p(j, i);
      }
      if (std::abs(column - 1.0) > p.tolerances().row_sum_tol) r.a4_doubly_stochastic = false;
    }
    r.influence.push_back(has_common_influence(p, set.clustering()));
    if (!r.influence.back().holds) r.common_influence = false;
  }
  if (any_positive) r.a3_delta = delta;

  if (n <= cut_balance_cap) {
    double worst = 1.0;
    bool balanced = true;
    for (const auto& p : set.matrices()) {
      auto c = check_cut_balance(p, cut_balance_cap);
      if (!c) {
        balanced = false;
        break;
      }
      worst = std::max(worst, *c);
    }
    if (balanced) r.cut_balance_constant = worst;
  }

  r.regime = derive_regime(r.a1_self_loops, r.a2_symmetric_pattern, r.a3_delta.has_value(),
                           r.a4_doubly_stochastic);
  return r;
}

std::optional<double> check_cut_balance(const StochasticMatrix& p, int cap) {
  const int n = p.n();
  if (cap > 26) fail(ErrorCode::InvalidArgument, "cut-balance cap above 26 is not supported");
  if (n > cap) {
    fail(ErrorCode::DimensionTooLarge,
         "cut balance is exhaustive; n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<std::uint32_t> out(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (p.positive(i, j)) out[i] |= std::uint32_t{1} << j;
    }
  }

  // flow[S] = sum_{i in S, j notin S} p_ij, built by adding the lowest vertex
  // of S last. reach[S] = union of out-neighbourhoods of S, used to decide
  // exactly whether a flow is zero.
  std::vector<double> flow(std::size_t{full} + 1, 0.0);
  std::vector<std::uint32_t> reach(std::size_t{full} + 1, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    const int v = std::countr_zero(s);
    const std::uint32_t rest = s & (s - 1);
    reach[s] = reach[rest] | out[v];
    double f = flow[rest];
    for (int j = 0; j < n; ++j) {
      if ((s >> j) & 1U) {
        if ((rest >> j) & 1U) f -= p(j, v);
      } else {
        f += p(v, j);
      }
    }
    flow[s] = f;
  }

  double worst = 1.0;
  for (std::uint32_t s = 1; s < full; ++s) {
    const std::uint32_t comp = full ^ s;
    const bool forward_zero = (reach[s] & comp) == 0;
    if (forward_zero) continue;
    const bool reverse_zero = (reach[comp] & s) == 0;
    if (reverse_zero) return std::nullopt;
    worst = std::max(worst, flow[s] / flow[comp]);
  }
  if (worst <= 1.0 + p.tolerances().equality_tol) return 1.0;
  return worst;
}

StochasticMatrix matrix_product(const StochasticMatrix& lhs, const StochasticMatrix& rhs) {
  if (lhs.n() != rhs.n()) fail(ErrorCode::DimensionMismatch, "product of different sizes");
  const int n = lhs.n();
  RawMatrix raw(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      const double a = lhs(i, l);
      if (a == 0.0) continue;
      for (int j = 0; j < n; ++j) raw[i][j] += a * rhs(l, j);
    }
  }
  return validate_stochastic(raw, lhs.tolerances());
}

}  // namespace ccons
