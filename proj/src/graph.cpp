#include "ccons/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "ccons/error.hpp"

namespace ccons {

DirectedGraph::DirectedGraph(int n, std::vector<VertexSet> out) : n_(n), out_(std::move(out)) {
  if (n <= 0 || n > kMaxVertices) {
    fail(ErrorCode::DimensionTooLarge, "graph size " + std::to_string(n));
  }
  if (static_cast<int>(out_.size()) != n) {
    fail(ErrorCode::DimensionMismatch, "adjacency has " + std::to_string(out_.size()) + " rows");
  }
  for (int v = 0; v < n; ++v) {
    if (!out_[v].subset_of(VertexSet::full(n))) {
      fail(ErrorCode::IndexOutOfRange, "neighbour of vertex " + std::to_string(v));
    }
  }
}

DirectedGraph graph_of(const StochasticMatrix& p) {
  std::vector<VertexSet> out(p.n());
  for (int i = 0; i < p.n(); ++i) {
    for (int j = 0; j < p.n(); ++j) {
      if (p.positive(i, j)) out[i].insert(j);
    }
  }
  return DirectedGraph(p.n(), std::move(out));
}

VertexSet out_neighbors(const DirectedGraph& g, VertexSet s) {
  VertexSet acc;
  for (int v : s.members()) acc |= g.out(v);
  return acc;
}

NeighborTable::NeighborTable(const DirectedGraph& g) {
  const int chunks = (g.n() + 7) / 8;
  table_.assign(static_cast<std::size_t>(chunks) * 256, 0);
  for (int c = 0; c < chunks; ++c) {
    for (int byte = 1; byte < 256; ++byte) {
      const int low = std::countr_zero(static_cast<unsigned>(byte));
      const int v = c * 8 + low;
      VertexSet::Mask acc = table_[c * 256 + (byte & (byte - 1))];
      if (v < g.n()) acc |= g.out(v).bits();
      table_[c * 256 + byte] = acc;
    }
  }
}

Condensation scc_condensation(const DirectedGraph& g) {
  const int n = g.n();
  std::vector<int> index(n, -1);
  std::vector<int> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<VertexSet> raw_components;
  int counter = 0;

  // Iterative Tarjan; each frame remembers which neighbours remain.
  struct Frame {
    int v;
    VertexSet::Mask pending;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames;
    frames.push_back({root, g.out(root).bits()});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.pending != 0) {
        const int w = std::countr_zero(f.pending);
        f.pending &= f.pending - 1;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, g.out(w).bits()});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const int v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == index[v]) {
        VertexSet comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.insert(w);
        } while (w != v);
        raw_components.push_back(comp);
      }
    }
  }

  std::sort(raw_components.begin(), raw_components.end(),
            [](VertexSet a, VertexSet b) { return a.first() < b.first(); });

  Condensation cg;
  cg.components = std::move(raw_components);
  cg.component_of.assign(n, -1);
  for (int c = 0; c < static_cast<int>(cg.components.size()); ++c) {
    for (int v : cg.components[c].members()) cg.component_of[v] = c;
  }
  std::set<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) {
    for (int w : g.out(v).members()) {
      const int a = cg.component_of[v];
      const int b = cg.component_of[w];
      if (a != b) edges.emplace(a, b);
    }
  }
  cg.dag_edges.assign(edges.begin(), edges.end());
  std::vector<bool> has_out(cg.components.size(), false);
  for (auto [a, b] : cg.dag_edges) has_out[a] = true;
  for (int c = 0; c < static_cast<int>(cg.components.size()); ++c) {
    if (!has_out[c]) cg.sinks.push_back(c);
  }
  return cg;
}

std::vector<int> bfs_distances(const DirectedGraph& g, int v) {
  if (v < 0 || v >= g.n()) fail(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v));
  std::vector<int> dist(g.n(), -1);
  std::deque<int> queue{v};
  dist[v] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : g.out(u).members()) {
      if (dist[w] == -1) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

VertexSet reachable_set(const DirectedGraph& g, int v) {
  const auto dist = bfs_distances(g, v);
  VertexSet out;
  for (int w = 0; w < g.n(); ++w) {
    if (dist[w] >= 0) out.insert(w);
  }
  return out;
}

ClusterSpanningTrees has_cluster_spanning_trees(const DirectedGraph& g, const Clustering& c) {
  if (g.n() != c.n()) fail(ErrorCode::DimensionMismatch, "graph and clustering sizes differ");
  std::vector<VertexSet> reach(g.n());
  for (int v = 0; v < g.n(); ++v) reach[v] = reachable_set(g, v);

  ClusterSpanningTrees out;
  out.holds = true;
  for (int k = 0; k < c.size(); ++k) {
    VertexSet common = VertexSet::full(g.n());
    for (int v : c.cluster(k)) common = common & reach[v];
    if (common.empty()) {
      out.holds = false;
      out.roots.clear();
      return out;
    }
    out.roots.push_back(common.first());
  }
  return out;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    if (ch == '\n') {
      out += "\\n";
      continue;
    }
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const DirectedGraph& g, const std::string& name, const Clustering* clustering) {
  std::ostringstream os;
  os << "digraph " << quoted(name) << " {\n";
  for (int v = 0; v < g.n(); ++v) {
    os << "  " << v;
    if (clustering != nullptr) os << " [label=\"" << v << " (C" << clustering->cluster_of(v) << ")\"]";
    os << ";\n";
  }
  for (int v = 0; v < g.n(); ++v) {
    for (int w : g.out(v).members()) os << "  " << v << " -> " << w << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const Condensation& cg, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << quoted(name) << " {\n";
  for (std::size_t c = 0; c < cg.components.size(); ++c) {
    std::string label;
    for (int v : cg.components[c].members()) label += (label.empty() ? "" : ",") + std::to_string(v);
    const bool sink = std::find(cg.sinks.begin(), cg.sinks.end(), static_cast<int>(c)) != cg.sinks.end();
    os << "  c" << c << " [label=" << quoted("{" + label + "}");
    if (sink) os << ", peripheries=2";
    os << "];\n";
  }
  for (auto [a, b] : cg.dag_edges) os << "  c" << a << " -> c" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace ccons
