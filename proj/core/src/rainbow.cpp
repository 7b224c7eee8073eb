#include "epgr/rainbow.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "epgr/error.hpp"

namespace epgr {

namespace {

void check_coloring(const SimpleGraph& g, const EdgeColoring& c) {
  if (static_cast<int>(c.colors.size()) != g.edge_count()) {
    throw Error(ErrorCode::ColoringSizeMismatch,
                std::to_string(c.colors.size()) + " colors for " +
                    std::to_string(g.edge_count()) + " edges");
  }
  for (int col : c.colors) {
    if (col < 1 || col > c.k) {
      throw Error(ErrorCode::ColoringSizeMismatch,
                  "color " + std::to_string(col) + " outside 1.." + std::to_string(c.k));
    }
  }
}

// Deterministic BFS shortest path u -> v (vertex list), assuming connectivity
// is irrelevant: returns empty when unreachable.
std::vector<int> bfs_path(const SimpleGraph& g, int u, int v) {
  std::vector<int> parent(g.vertex_count(), -1);
  parent[u] = u;
  std::deque<int> q{u};
  while (!q.empty() && parent[v] == -1) {
    int x = q.front();
    q.pop_front();
    for (auto [w, id] : g.neighbors(x)) {
      (void)id;
      if (parent[w] == -1) {
        parent[w] = x;
        q.push_back(w);
      }
    }
  }
  if (parent[v] == -1) return {};
  std::vector<int> path{v};
  while (path.back() != u) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

bool path_colors_distinct(const SimpleGraph& g, const EdgeColoring& c,
                          const std::vector<int>& path) {
  std::vector<char> seen(c.k + 1, 0);
  for (std::size_t t = 0; t + 1 < path.size(); ++t) {
    int col = c.colors[g.edge_id(path[t], path[t + 1])];
    if (seen[col]) return false;
    seen[col] = 1;
  }
  return true;
}

// Rainbow walk search with memoized dead (vertex, color-mask) states. A walk
// with pairwise distinct edge colors always contains a path with the same
// property, so walk reachability decides the question. Requires k <= 20.
bool rainbow_walk_exists(const SimpleGraph& g, const EdgeColoring& c, int u, int v) {
  std::unordered_set<std::uint64_t> dead;
  // Explicit stack of (vertex, mask) in-progress frames.
  struct Frame {
    int vertex;
    std::uint32_t mask;
    std::size_t next = 0;
  };
  std::vector<Frame> stack{{u, 0}};
  std::vector<std::uint64_t> keys{static_cast<std::uint64_t>(u) << 20};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.vertex == v) return true;
    const auto& nbrs = g.neighbors(f.vertex);
    bool descended = false;
    while (f.next < nbrs.size()) {
      auto [w, id] = nbrs[f.next++];
      std::uint32_t bit = 1u << (c.colors[id] - 1);
      if (f.mask & bit) continue;
      std::uint32_t mask = f.mask | bit;
      std::uint64_t key = (static_cast<std::uint64_t>(w) << 20) | mask;
      if (dead.count(key)) continue;
      stack.push_back({w, mask});
      keys.push_back(key);
      descended = true;
      break;
    }
    if (!descended) {
      dead.insert(keys.back());
      keys.pop_back();
      stack.pop_back();
    }
  }
  return false;
}

// Fallback for wide palettes: simple-path DFS with a used-color table.
bool rainbow_simple_path_exists(const SimpleGraph& g, const EdgeColoring& c, int u, int v) {
  std::vector<char> visited(g.vertex_count(), 0);
  std::vector<char> used(c.k + 1, 0);
  std::function<bool(int)> go = [&](int x) -> bool {
    if (x == v) return true;
    visited[x] = 1;
    for (auto [w, id] : g.neighbors(x)) {
      int col = c.colors[id];
      if (visited[w] || used[col]) continue;
      used[col] = 1;
      if (go(w)) return true;
      used[col] = 0;
    }
    visited[x] = 0;
    return false;
  };
  return go(u);
}

bool pair_rainbow_connected(const SimpleGraph& g, const EdgeColoring& c, int u, int v) {
  if (g.adjacent(u, v)) return true;
  // Cheap accept: one shortest path with distinct colors.
  std::vector<int> sp = bfs_path(g, u, v);
  if (sp.empty()) return false;
  if (path_colors_distinct(g, c, sp)) return true;
  if (sp.size() == 3) {
    // Distance two: scan every common neighbor.
    for (auto [w, id1] : g.neighbors(u)) {
      int id2 = g.edge_id(w, v);
      if (id2 >= 0 && c.colors[id1] != c.colors[id2]) return true;
    }
    // No common neighbor works; a longer rainbow path may still exist.
  }
  if (c.k <= 20) return rainbow_walk_exists(g, c, u, v);
  return rainbow_simple_path_exists(g, c, u, v);
}

}  // namespace

RainbowCheck is_rainbow_connected(const SimpleGraph& g, const EdgeColoring& c) {
  check_coloring(g, c);
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int v = u + 1; v < g.vertex_count(); ++v) {
      if (!pair_rainbow_connected(g, c, u, v)) return RainbowCheck{false, {u, v}};
    }
  }
  return RainbowCheck{true, {-1, -1}};
}

std::optional<std::vector<int>> rainbow_path(const SimpleGraph& g, const EdgeColoring& c,
                                             int u, int v) {
  check_coloring(g, c);
  if (u < 0 || u >= g.vertex_count() || v < 0 || v >= g.vertex_count()) {
    throw Error(ErrorCode::BadParameter, "vertex out of range");
  }
  if (u == v) return std::vector<int>{u};
  std::vector<char> visited(g.vertex_count(), 0);
  std::vector<char> used(c.k + 1, 0);
  std::vector<int> path{u};
  std::function<bool(int)> go = [&](int x) -> bool {
    visited[x] = 1;
    for (auto [w, id] : g.neighbors(x)) {
      int col = c.colors[id];
      if (visited[w] || used[col]) continue;
      path.push_back(w);
      if (w == v) return true;
      used[col] = 1;
      if (go(w)) return true;
      used[col] = 0;
      path.pop_back();
    }
    visited[x] = 0;
    return false;
  };
  if (go(u)) return path;
  return std::nullopt;
}

const char* to_string(LowerBoundSource s) {
  switch (s) {
    case LowerBoundSource::Complete: return "COMPLETE";
    case LowerBoundSource::Diameter: return "DIAMETER";
    case LowerBoundSource::Bridges: return "BRIDGES";
    case LowerBoundSource::IcsTriple: return "ICS_TRIPLE";
    case LowerBoundSource::Search: return "SEARCH";
  }
  return "?";
}

LowerBound rc_lower_bound(const SimpleGraph& g, const StructuralHints& hints) {
  GraphMetrics m = graph_metrics(g);
  if (m.is_complete) return LowerBound{1, LowerBoundSource::Complete};
  LowerBound best{m.diameter, LowerBoundSource::Diameter};
  if (m.bridge_count >= best.value) best = {m.bridge_count, LowerBoundSource::Bridges};
  if (hints.icn >= 3 && 3 > best.value) best = {3, LowerBoundSource::IcsTriple};
  if (hints.invmax > best.value) best = {hints.invmax, LowerBoundSource::IcsTriple};
  return best;
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::TwoMax: return "TWO_MAX";
    case Strategy::StarIcn1: return "STAR_ICN1";
    case Strategy::StarIcn3: return "STAR_ICN3";
    case Strategy::InvmaxEqMax: return "INVMAX_EQ_MAX";
    case Strategy::DistinctWitness: return "DISTINCT_WITNESS";
    case Strategy::Awning: return "AWNING";
    case Strategy::InvmaxGe3: return "INVMAX_GE3";
  }
  return "?";
}

bool strategy_applies(Strategy s, const CyclicDecomposition& d, const IcsReport& ics,
                      AwningVerdict awning) {
  const int m = d.size();
  const int invmax = static_cast<int>(ics.invmax_indices.size());
  switch (s) {
    case Strategy::TwoMax: return m == 2;
    case Strategy::StarIcn1: return m == 3 && ics.icn == 1;
    case Strategy::StarIcn3: return ics.icn >= 3 && invmax == 0;
    case Strategy::InvmaxEqMax: return m >= 2 && invmax == m;
    case Strategy::DistinctWitness: return m >= 2 && distinct_witnesses(d).has_value();
    case Strategy::Awning: return awning == AwningVerdict::Found;
    case Strategy::InvmaxGe3: return invmax >= 3;
  }
  return false;
}

namespace {

// Shared scaffolding: named edges are assigned first-writer-wins, the rest
// fall back to default_color.
struct ColoringBuilder {
  const SimpleGraph& g;
  std::vector<int> colors;

  explicit ColoringBuilder(const SimpleGraph& gg) : g(gg), colors(gg.edge_count(), 0) {}

  void put(int u, int v, int color) {
    int id = g.edge_id(u, v);
    if (id < 0) {
      throw Error(ErrorCode::DimensionMismatch,
                  "construction names edge (" + std::to_string(u) + "," + std::to_string(v) +
                      ") absent from the graph");
    }
    if (colors[id] == 0) colors[id] = color;
  }

  EdgeColoring finish(int default_color) {
    int k = 1;
    for (int& c : colors) {
      if (c == 0) c = default_color;
      k = std::max(k, c);
    }
    return EdgeColoring{k, colors};
  }
};

void require(bool cond, const char* what) {
  if (!cond) throw Error(ErrorCode::HypothesisNotMet, what);
}

}  // namespace

EdgeColoring build_strategy_coloring(Strategy s, const CyclicDecomposition& d,
                                     const SimpleGraph& g, const StrategyAux& aux) {
  if (g.vertex_count() != d.group_order()) {
    throw Error(ErrorCode::DimensionMismatch, "graph order does not match the decomposition");
  }
  const auto& entries = d.entries();
  const int m = d.size();
  ColoringBuilder b(g);

  switch (s) {
    case Strategy::TwoMax: {
      require(m == 2, "needs exactly two entries");
      for (int i = 0; i < 2; ++i) {
        const auto& mem = entries[i].members;
        for (std::size_t x = 0; x < mem.size(); ++x) {
          for (std::size_t y = x + 1; y < mem.size(); ++y) b.put(mem[x], mem[y], i + 1);
        }
      }
      return b.finish(1);
    }

    case Strategy::StarIcn1: {
      IcsReport ics = ics_report(d);
      require(m == 3 && ics.icn == 1, "needs three entries with one isolated entry");
      const int istar = ics.ics_indices[0];
      std::vector<int> rest;
      for (int i = 0; i < 3; ++i) {
        if (i != istar) rest.push_back(i);
      }
      const int p = rest[0], q = rest[1];
      const auto& sp = entries[p].members;
      const auto& sq = entries[q].members;
      auto in = [](const std::vector<int>& set, int x) {
        return std::binary_search(set.begin(), set.end(), x);
      };
      // Color 1: inside the isolated entry, and inside S_p away from the
      // identity.
      const auto& si = entries[istar].members;
      for (std::size_t x = 0; x < si.size(); ++x) {
        for (std::size_t y = x + 1; y < si.size(); ++y) b.put(si[x], si[y], 1);
      }
      for (std::size_t x = 0; x < sp.size(); ++x) {
        for (std::size_t y = x + 1; y < sp.size(); ++y) {
          if (sp[x] != 0 && sp[y] != 0) b.put(sp[x], sp[y], 1);
        }
      }
      // Color 2: the identity's edges into S_p and S_q, and the edges between
      // S_q-only elements and the shared non-identity core.
      for (int x : sp) {
        if (x != 0) b.put(0, x, 2);
      }
      for (int x : sq) {
        if (x != 0) b.put(0, x, 2);
      }
      for (int x : sq) {
        if (x == 0 || in(sp, x)) continue;
        for (int y : d.intersection(p, q)) {
          if (y != 0) b.put(x, y, 2);
        }
      }
      return b.finish(1);
    }

    case Strategy::StarIcn3: {
      IcsReport ics = ics_report(d);
      require(ics.icn >= 3 && ics.invmax_indices.empty(),
              "needs three isolated entries and no two-element entries");
      for (const auto& e : entries) {
        b.put(e.generator, 0, 1);
        for (int x : e.members) {
          if (x != 0 && x != e.generator) b.put(0, x, 2);
        }
        for (std::size_t x = 0; x < e.members.size(); ++x) {
          for (std::size_t y = x + 1; y < e.members.size(); ++y) {
            if (e.members[x] != 0 && e.members[y] != 0) b.put(e.members[x], e.members[y], 3);
          }
        }
      }
      return b.finish(3);
    }

    case Strategy::InvmaxEqMax: {
      IcsReport ics = ics_report(d);
      require(m >= 2 && static_cast<int>(ics.invmax_indices.size()) == m,
              "needs every entry to be a two-element subgroup");
      for (int i = 0; i < m; ++i) {
        int t = entries[i].members[0] == 0 ? entries[i].members[1] : entries[i].members[0];
        b.put(0, t, i + 1);
      }
      return b.finish(1);
    }

    case Strategy::DistinctWitness: {
      require(aux.witnesses != nullptr, "needs a witness matrix");
      require(aux.witnesses->m == m, "witness matrix size mismatch");
      for (int i = 0; i < m; ++i) {
        const auto& si = entries[i].members;
        for (int j = i + 1; j < m; ++j) {
          const auto& sj = entries[j].members;
          int h = aux.witnesses->at(i, j);
          const auto& inter = d.intersection(i, j);
          require(h != 0 && std::binary_search(inter.begin(), inter.end(), h),
                  "witness must be a shared non-identity element");
          for (int a : si) {
            if (a != h && !std::binary_search(sj.begin(), sj.end(), a)) b.put(a, h, 1);
          }
          for (int bb : sj) {
            if (bb != h && !std::binary_search(si.begin(), si.end(), bb)) b.put(bb, h, 2);
          }
        }
      }
      return b.finish(1);
    }

    case Strategy::Awning: {
      require(aux.awning != nullptr, "needs an awning certificate");
      require(aux.awning->m() == m, "certificate size mismatch");
      const auto& cert = *aux.awning;
      const auto& ord = cert.order();
      for (int r = 0; r < m; ++r) {
        const auto& si = entries[ord[r]].members;
        for (int s2 = r + 1; s2 < m; ++s2) {
          const auto& sj = entries[ord[s2]].members;
          int h = cert.witness(r, s2);
          bool swap = aux.swap_b_rows && cert.side(r, s2) == Side::B;
          int ca = swap ? 2 : 1;
          int cb = swap ? 1 : 2;
          for (int a : si) {
            if (a != h && !std::binary_search(sj.begin(), sj.end(), a)) b.put(a, h, ca);
          }
          for (int bb : sj) {
            if (bb != h && !std::binary_search(si.begin(), si.end(), bb)) b.put(bb, h, cb);
          }
        }
      }
      return b.finish(1);
    }

    case Strategy::InvmaxGe3: {
      IcsReport ics = ics_report(d);
      const int l = static_cast<int>(ics.invmax_indices.size());
      require(l >= 3, "needs at least three two-element entries");
      for (int t = 0; t < l; ++t) {
        const auto& mem = entries[ics.invmax_indices[t]].members;
        int x = mem[0] == 0 ? mem[1] : mem[0];
        b.put(0, x, t + 1);
      }
      for (int i = 0; i < m; ++i) {
        if (std::binary_search(ics.invmax_indices.begin(), ics.invmax_indices.end(), i)) continue;
        const auto& e = entries[i];
        b.put(e.generator, 0, 1);
        for (int x : e.members) {
          if (x != 0 && x != e.generator) b.put(0, x, 2);
        }
        for (std::size_t x = 0; x < e.members.size(); ++x) {
          for (std::size_t y = x + 1; y < e.members.size(); ++y) {
            if (e.members[x] != 0 && e.members[y] != 0) b.put(e.members[x], e.members[y], 3);
          }
        }
      }
      return b.finish(3);
    }
  }
  throw Error(ErrorCode::BadParameter, "unknown strategy");
}

namespace {

struct PairPaths {
  int u = 0, v = 0;
  bool prunable = true;            // false once enumeration overflowed
  std::vector<std::vector<int>> paths;  // edge-id lists
};

// All simple u-v paths with at most max_len edges. Returns false when the
// enumeration exceeds its caps (caller must then treat the pair as unpruned).
bool enumerate_paths(const SimpleGraph& g, int u, int v, int max_len,
                     std::vector<std::vector<int>>& out) {
  constexpr std::size_t kMaxPaths = 2000;
  constexpr std::uint64_t kMaxSteps = 200'000;
  std::uint64_t steps = 0;
  std::vector<char> visited(g.vertex_count(), 0);
  std::vector<int> edge_stack;
  bool ok = true;
  std::function<void(int)> go = [&](int x) {
    if (!ok) return;
    if (++steps > kMaxSteps) {
      ok = false;
      return;
    }
    if (x == v) {
      if (out.size() >= kMaxPaths) {
        ok = false;
        return;
      }
      out.push_back(edge_stack);
      return;
    }
    if (static_cast<int>(edge_stack.size()) == max_len) return;
    visited[x] = 1;
    for (auto [w, id] : g.neighbors(x)) {
      if (visited[w]) continue;
      edge_stack.push_back(id);
      go(w);
      edge_stack.pop_back();
      if (!ok) break;
    }
    visited[x] = 0;
  };
  go(u);
  if (!ok) out.clear();
  return ok;
}

enum class LevelOutcome { Found, Refuted, Budget };

struct LevelSearch {
  const SimpleGraph& g;
  int k;
  std::uint64_t budget;

  std::vector<PairPaths> pairs;
  std::vector<std::vector<int>> pairs_of_edge;  // edge id -> pair indices
  std::vector<int> colors;
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  bool budget_out = false;
  bool infeasible = false;  // some pair has provably no path of length <= k
  EdgeColoring found;

  LevelSearch(const SimpleGraph& gg, int kk, std::uint64_t b) : g(gg), k(kk), budget(b) {
    colors.assign(g.edge_count(), 0);
    pairs_of_edge.assign(g.edge_count(), {});
    for (int u = 0; u < g.vertex_count() && !infeasible; ++u) {
      for (int v = u + 1; v < g.vertex_count(); ++v) {
        if (g.adjacent(u, v)) continue;
        PairPaths pp;
        pp.u = u;
        pp.v = v;
        pp.prunable = enumerate_paths(g, u, v, k, pp.paths);
        if (pp.prunable && pp.paths.empty()) {
          // No connection of length <= k can exist under any coloring.
          infeasible = true;
          break;
        }
        if (!pp.prunable) continue;  // nothing stored; pair is never checked
        int idx = static_cast<int>(pairs.size());
        std::vector<char> touched(g.edge_count(), 0);
        for (const auto& path : pp.paths) {
          for (int e : path) touched[e] = 1;
        }
        for (int e = 0; e < g.edge_count(); ++e) {
          if (touched[e]) pairs_of_edge[e].push_back(idx);
        }
        pairs.push_back(std::move(pp));
      }
    }
  }

  bool path_open(const std::vector<int>& path) const {
    std::uint32_t mask = 0;
    for (int e : path) {
      int c = colors[e];
      if (c == 0) continue;
      std::uint32_t bit = 1u << (c - 1);
      if (mask & bit) return false;
      mask |= bit;
    }
    return true;
  }

  bool pair_open(const PairPaths& pp) const {
    for (const auto& path : pp.paths) {
      if (path_open(path)) return true;
    }
    return false;
  }

  bool dfs(int t, int max_used) {
    if (t == g.edge_count()) {
      ++leaves;
      EdgeColoring cand{k, colors};
      if (is_rainbow_connected(g, cand).ok) {
        found = std::move(cand);
        return true;
      }
      return false;
    }
    int limit = std::min(max_used + 1, k);
    for (int c = 1; c <= limit; ++c) {
      if (++nodes > budget) {
        budget_out = true;
        return false;
      }
      colors[t] = c;
      bool open = true;
      for (int p : pairs_of_edge[t]) {
        if (!pair_open(pairs[p])) {
          open = false;
          break;
        }
      }
      if (open && dfs(t + 1, std::max(max_used, c))) return true;
      if (budget_out) {
        colors[t] = 0;
        return false;
      }
      colors[t] = 0;
    }
    return false;
  }

  LevelOutcome run() {
    if (infeasible) return LevelOutcome::Refuted;
    if (dfs(0, 0)) return LevelOutcome::Found;
    return budget_out ? LevelOutcome::Budget : LevelOutcome::Refuted;
  }
};

}  // namespace

RcResult rc_exact(const SimpleGraph& g, const RcBudget& budget,
                  const std::vector<EdgeColoring>& upper_candidates,
                  const StructuralHints& hints) {
  const auto t0 = std::chrono::steady_clock::now();
  RcResult res;
  auto finish = [&](RcResult r) {
    r.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  };

  LowerBound lb = rc_lower_bound(g, hints);
  res.lower_bound = lb.value;
  res.lower_bound_source = lb.source;

  if (lb.source == LowerBoundSource::Complete) {
    res.kind = RcKind::Exact;
    res.value = res.upper_bound = 1;
    res.certificate = EdgeColoring{1, std::vector<int>(g.edge_count(), 1)};
    return finish(res);
  }

  const int E = g.edge_count();
  EdgeColoring best{E, std::vector<int>(E)};
  std::iota(best.colors.begin(), best.colors.end(), 1);
  int ub_best = E;  // all-distinct fallback is rainbow by construction
  for (const auto& cand : upper_candidates) {
    if (cand.k >= ub_best) continue;
    ++res.stats.colorings_tested;
    if (is_rainbow_connected(g, cand).ok) {
      ub_best = cand.k;
      best = cand;
    }
  }

  // Level refutations can lift the bound past every structural source.
  auto set_lower = [&](int value) {
    res.lower_bound = value;
    if (value > lb.value) res.lower_bound_source = LowerBoundSource::Search;
  };

  for (int k = lb.value; k < ub_best; ++k) {
    if (!(E <= budget.exhaustive_edge_limit || k <= 2 || budget.gate_override)) {
      res.kind = RcKind::Interval;
      set_lower(k);
      res.upper_bound = ub_best;
      res.certificate = best;
      return finish(res);
    }
    LevelSearch level(g, k, budget.nodes_per_level);
    LevelOutcome out = level.run();
    res.stats.nodes += level.nodes;
    res.stats.colorings_tested += level.leaves;
    if (out == LevelOutcome::Found) {
      res.kind = RcKind::Exact;
      res.value = res.upper_bound = k;
      set_lower(k);
      res.certificate = level.found;
      return finish(res);
    }
    if (out == LevelOutcome::Budget) {
      res.kind = RcKind::Interval;
      set_lower(k);
      res.upper_bound = ub_best;
      res.certificate = best;
      return finish(res);
    }
    // Refuted: rc > k.
  }

  res.kind = RcKind::Exact;
  res.value = res.upper_bound = ub_best;
  set_lower(ub_best);
  res.certificate = best;
  return finish(res);
}

std::string coloring_json(const EdgeColoring& c, const SimpleGraph& g) {
  check_coloring(g, c);
  nlohmann::json j;
  j["k"] = c.k;
  auto edges = nlohmann::json::array();
  for (int id = 0; id < g.edge_count(); ++id) {
    edges.push_back({{"u", g.edge(id).first}, {"v", g.edge(id).second}, {"color", c.colors[id]}});
  }
  j["edges"] = std::move(edges);
  return j.dump();
}

std::string rc_result_json(const RcResult& r, const SimpleGraph& g) {
  nlohmann::json j;
  j["kind"] = r.kind == RcKind::Exact ? "EXACT" : "INTERVAL";
  if (r.kind == RcKind::Exact) j["value"] = r.value;
  j["lower_bound"] = r.lower_bound;
  j["upper_bound"] = r.upper_bound;
  j["lower_bound_source"] = to_string(r.lower_bound_source);
  if (r.certificate) j["certificate"] = nlohmann::json::parse(coloring_json(*r.certificate, g));
  j["nodes"] = r.stats.nodes;
  j["colorings_tested"] = r.stats.colorings_tested;
  return j.dump();
}

}  // namespace epgr
