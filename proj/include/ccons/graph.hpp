#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccons/matrix.hpp"
#include "ccons/vertex_set.hpp"

namespace ccons {

/// Support graph: edge (i, j) iff p_ij > zero_tol.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  /// Throws IndexOutOfRange if a neighbour mask reaches past n.
  DirectedGraph(int n, std::vector<VertexSet> out);

  int n() const { return n_; }
  VertexSet out(int v) const { return out_[v]; }
  const std::vector<VertexSet>& adjacency() const { return out_; }
  bool has_edge(int i, int j) const { return out_[i].contains(j); }

  bool operator==(const DirectedGraph&) const = default;

 private:
  int n_ = 0;
  std::vector<VertexSet> out_;
};

DirectedGraph graph_of(const StochasticMatrix& p);

VertexSet out_neighbors(const DirectedGraph& g, VertexSet s);

/// Precomputed byte-chunk unions of out-neighbourhoods, so that N(S) costs
/// one lookup per 8 vertices. Used by the decision search.
class NeighborTable {
 public:
  explicit NeighborTable(const DirectedGraph& g);
  VertexSet image(VertexSet s) const {
    VertexSet::Mask acc = 0;
    VertexSet::Mask bits = s.bits();
    for (std::size_t chunk = 0; bits != 0; ++chunk, bits >>= 8) {
      acc |= table_[chunk * 256 + (bits & 0xFF)];
    }
    return VertexSet(acc);
  }

 private:
  std::vector<VertexSet::Mask> table_;
};

struct Condensation {
  std::vector<VertexSet> components;
  /// Edges between component indices, sorted, without duplicates or self edges.
  std::vector<std::pair<int, int>> dag_edges;
  std::vector<int> sinks;
  /// component_of[v] indexes `components`.
  std::vector<int> component_of;
};

/// Components are numbered by their smallest vertex.
Condensation scc_condensation(const DirectedGraph& g);

VertexSet reachable_set(const DirectedGraph& g, int v);

/// Breadth-first distances from v; -1 for unreachable vertices.
std::vector<int> bfs_distances(const DirectedGraph& g, int v);

struct ClusterSpanningTrees {
  bool holds = false;
  /// One root per cluster (smallest common reachable vertex) when holds.
  std::vector<int> roots;
};

ClusterSpanningTrees has_cluster_spanning_trees(const DirectedGraph& g, const Clustering& c);

/// Graphviz export. Vertices are emitted in index order and labelled with
/// their cluster when one is given.
std::string to_dot(const DirectedGraph& g, const std::string& name,
                   const Clustering* clustering = nullptr);
std::string to_dot(const Condensation& cg, const std::string& name);

}  // namespace ccons
