#include "test_support.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace epgr::test {

SimpleGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return SimpleGraph(n, std::move(edges));
}

SimpleGraph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return SimpleGraph(n, std::move(edges));
}

SimpleGraph cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(0, n - 1);
  return SimpleGraph(n, std::move(edges));
}

SimpleGraph star_graph(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return SimpleGraph(leaves + 1, std::move(edges));
}

namespace {

// Any walk with pairwise distinct edge colors shortens to a simple path with
// a subset of those colors, so restricting the search to simple paths loses
// nothing.
bool rainbow_pair(const SimpleGraph& g, const std::vector<int>& colors, int u, int v) {
  int max_color = 0;
  for (int c : colors) max_color = std::max(max_color, c);
  std::vector<char> visited(static_cast<size_t>(g.vertex_count()), 0);
  std::vector<char> used(static_cast<size_t>(max_color) + 1, 0);
  std::function<bool(int)> walk = [&](int x) {
    if (x == v) return true;
    for (const auto& [y, eid] : g.neighbors(x)) {
      if (visited[y] || used[colors[eid]]) continue;
      visited[y] = 1;
      used[colors[eid]] = 1;
      if (walk(y)) return true;
      visited[y] = 0;
      used[colors[eid]] = 0;
    }
    return false;
  };
  visited[u] = 1;
  return walk(u);
}

}  // namespace

bool naive_rainbow_connected(const SimpleGraph& g, const std::vector<int>& colors) {
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int v = u + 1; v < g.vertex_count(); ++v) {
      if (!rainbow_pair(g, colors, u, v)) return false;
    }
  }
  return true;
}

int naive_rc(const SimpleGraph& g) {
  const int e = g.edge_count();
  for (int k = 1; k < e; ++k) {
    std::vector<int> colors(static_cast<size_t>(e), 1);
    while (true) {
      if (naive_rainbow_connected(g, colors)) return k;
      int i = 0;
      while (i < e && colors[i] == k) colors[i++] = 1;
      if (i == e) break;
      ++colors[i];
    }
  }
  // The all-distinct coloring rainbow-connects any connected graph.
  return e;
}

std::vector<SimpleGraph> connected_graph_corpus(int max_n, int max_edges) {
  std::vector<SimpleGraph> out;
  for (int n = 2; n <= max_n; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    }
    const int s = static_cast<int>(slots.size());
    for (unsigned mask = 0; mask < (1u << s); ++mask) {
      if (__builtin_popcount(mask) < n - 1 || __builtin_popcount(mask) > max_edges) continue;
      std::vector<int> parent(static_cast<size_t>(n));
      for (int v = 0; v < n; ++v) parent[v] = v;
      std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
      };
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < s; ++i) {
        if (!(mask & (1u << i))) continue;
        edges.push_back(slots[i]);
        parent[find(slots[i].first)] = find(slots[i].second);
      }
      bool connected = true;
      for (int v = 1; v < n && connected; ++v) connected = find(v) == find(0);
      if (connected) out.emplace_back(n, std::move(edges));
    }
  }
  return out;
}

}  // namespace epgr::test
