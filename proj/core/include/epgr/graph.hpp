#pragma once

#include <string>
#include <utility>
#include <vector>

#include "epgr/cyclic.hpp"
#include "epgr/error.hpp"

namespace epgr {

// Undirected simple graph on vertices 0..n-1. Edges are stored sorted with
// u < v; duplicates are merged, loops rejected.
class SimpleGraph {
 public:
  SimpleGraph(int n, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::pair<int, int>& edge(int id) const { return edges_[id]; }

  // -1 when the edge is absent.
  int edge_id(int u, int v) const;
  bool adjacent(int u, int v) const { return edge_id(u, v) >= 0; }
  // (neighbor, edge id) pairs, neighbor ascending.
  const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_[v]; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
};

// Union of the entry cliques: x ~ y iff both lie in some entry.
SimpleGraph clique_union_graph(int n, const CyclicDecomposition& d);

// x ~ y iff both lie in a common cyclic subgroup; equals the clique union of
// the maximal cyclic subgroups.
SimpleGraph enhanced_power_graph(const FiniteGroup& g, const CyclicDecomposition& d);
SimpleGraph enhanced_power_graph(const FiniteGroup& g);

// x ~ y iff one is a power of the other.
SimpleGraph power_graph(const FiniteGroup& g);

struct GraphMetrics {
  int diameter = 0;
  int bridge_count = 0;
  bool is_complete = false;
};

// Throws Error(DisconnectedGraph) when the graph is not connected.
GraphMetrics graph_metrics(const SimpleGraph& g);

// 1-based colors, one per edge in edge-id order; k is the palette size and
// must be >= every color used.
struct EdgeColoring {
  int k = 0;
  std::vector<int> colors;
};

// Graphviz text. Colors cycle through a 12-entry palette with the numeric
// color as edge label. Throws ColoringSizeMismatch when a coloring is given
// but does not cover every edge.
std::string export_dot(const SimpleGraph& g, const std::vector<std::string>& labels,
                       const EdgeColoring* coloring = nullptr);

// {"n": ..., "edges": [[u,v], ...], "labels": [...]}
std::string graph_json(const SimpleGraph& g, const std::vector<std::string>& labels);

}  // namespace epgr
