#include "epgr/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include <nlohmann/json.hpp>

namespace epgr {

SimpleGraph::SimpleGraph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "graph needs at least one vertex");
  for (auto& [u, v] : edges) {
    if (u == v) throw Error(ErrorCode::BadParameter, "loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorCode::BadParameter, "edge endpoint out of range");
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  adj_.resize(n_);
  for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
    adj_[edges_[id].first].push_back({edges_[id].second, id});
    adj_[edges_[id].second].push_back({edges_[id].first, id});
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

int SimpleGraph::edge_id(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
  if (it == edges_.end() || *it != std::make_pair(u, v)) return -1;
  return static_cast<int>(it - edges_.begin());
}

SimpleGraph clique_union_graph(int n, const CyclicDecomposition& d) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& ent : d.entries()) {
    const auto& mem = ent.members;
    for (size_t i = 0; i < mem.size(); ++i) {
      for (size_t j = i + 1; j < mem.size(); ++j) edges.push_back({mem[i], mem[j]});
    }
  }
  return SimpleGraph(n, std::move(edges));
}

SimpleGraph enhanced_power_graph(const FiniteGroup& g, const CyclicDecomposition& d) {
  if (d.group_order() != g.order()) {
    throw Error(ErrorCode::DimensionMismatch, "decomposition order does not match group");
  }
  return clique_union_graph(g.order(), d);
}

SimpleGraph enhanced_power_graph(const FiniteGroup& g) {
  return clique_union_graph(g.order(), maximal_cyclic_subgroups(g));
}

SimpleGraph power_graph(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<std::vector<char>> in(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a) {
    for (int x : g.generated_subgroup(a)) in[a][x] = 1;
  }
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (in[u][v] || in[v][u]) edges.push_back({u, v});
    }
  }
  return SimpleGraph(n, std::move(edges));
}

namespace {

void bridges_dfs(const SimpleGraph& g, int root, std::vector<int>& tin, std::vector<int>& low,
                 int& timer, int& bridge_count) {
  // Iterative low-link scan; an edge is a bridge when its child subtree never
  // reaches back above it.
  struct Frame {
    int v;
    int parent_edge;
    size_t next = 0;
  };
  std::vector<Frame> stack{{root, -1}};
  tin[root] = low[root] = timer++;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& nbrs = g.neighbors(f.v);
    if (f.next < nbrs.size()) {
      auto [to, id] = nbrs[f.next++];
      if (id == f.parent_edge) continue;
      if (tin[to] >= 0) {
        low[f.v] = std::min(low[f.v], tin[to]);
      } else {
        tin[to] = low[to] = timer++;
        stack.push_back({to, id});
      }
    } else {
      int v = f.v;
      int pe = f.parent_edge;
      stack.pop_back();
      if (!stack.empty()) {
        int parent = stack.back().v;
        low[parent] = std::min(low[parent], low[v]);
        if (low[v] > tin[parent]) ++bridge_count;
        (void)pe;
      }
    }
  }
}

}  // namespace

GraphMetrics graph_metrics(const SimpleGraph& g) {
  const int n = g.vertex_count();
  GraphMetrics out;

  int diameter = 0;
  std::vector<int> dist(n);
  for (int src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (auto [to, id] : g.neighbors(v)) {
        (void)id;
        if (dist[to] < 0) {
          dist[to] = dist[v] + 1;
          queue.push_back(to);
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      if (dist[v] < 0) throw Error(ErrorCode::DisconnectedGraph, "no path from " +
                                                                     std::to_string(src) + " to " +
                                                                     std::to_string(v));
      diameter = std::max(diameter, dist[v]);
    }
  }
  out.diameter = diameter;
  out.is_complete = g.edge_count() == n * (n - 1) / 2;

  std::vector<int> tin(n, -1), low(n, -1);
  int timer = 0;
  int bridges = 0;
  bridges_dfs(g, 0, tin, low, timer, bridges);
  out.bridge_count = bridges;
  return out;
}

std::string export_dot(const SimpleGraph& g, const std::vector<std::string>& labels,
                       const EdgeColoring* coloring) {
  if (!labels.empty() && static_cast<int>(labels.size()) != g.vertex_count()) {
    throw Error(ErrorCode::DimensionMismatch, "label count does not match vertex count");
  }
  if (coloring && static_cast<int>(coloring->colors.size()) != g.edge_count()) {
    throw Error(ErrorCode::ColoringSizeMismatch,
                "coloring covers " + std::to_string(coloring->colors.size()) + " of " +
                    std::to_string(g.edge_count()) + " edges");
  }
  static const char* palette[12] = {"red",     "blue", "green",   "orange", "purple",    "brown",
                                    "cyan3",   "magenta", "gold", "gray40", "darkgreen", "navy"};
  auto escape = [](const std::string& s) {
    std::string out;
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out;
  };

  std::ostringstream os;
  os << "graph G {\n";
  os << "  node [shape=circle];\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    os << "  " << v;
    if (!labels.empty()) os << " [label=\"" << escape(labels[v]) << "\"]";
    os << ";\n";
  }
  for (int id = 0; id < g.edge_count(); ++id) {
    auto [u, v] = g.edge(id);
    os << "  " << u << " -- " << v;
    if (coloring) {
      int c = coloring->colors[id];
      os << " [color=\"" << palette[(c - 1) % 12] << "\", label=\"" << c << "\"]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string graph_json(const SimpleGraph& g, const std::vector<std::string>& labels) {
  nlohmann::json j;
  j["n"] = g.vertex_count();
  auto edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  j["labels"] = labels;
  return j.dump();
}

}  // namespace epgr
