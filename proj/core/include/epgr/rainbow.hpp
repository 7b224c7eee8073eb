#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epgr/awning.hpp"
#include "epgr/cyclic.hpp"
#include "epgr/graph.hpp"

namespace epgr {

struct RainbowCheck {
  bool ok = false;
  std::pair<int, int> failing_pair{-1, -1};  // lexicographically first failure
};

// Whether every vertex pair is joined by a path whose edge colors are
// pairwise distinct. Throws ColoringSizeMismatch when the coloring does not
// cover the edge set.
RainbowCheck is_rainbow_connected(const SimpleGraph& g, const EdgeColoring& c);

// A color-distinct path from u to v (vertex list), or nullopt. u == v yields
// the single-vertex path. Deterministic: neighbors are explored ascending.
std::optional<std::vector<int>> rainbow_path(const SimpleGraph& g, const EdgeColoring& c,
                                             int u, int v);

// Search marks bounds that exhaustive level refutation pushed above every
// structural bound; rc_lower_bound itself never returns it.
enum class LowerBoundSource { Complete, Diameter, Bridges, IcsTriple, Search };

const char* to_string(LowerBoundSource s);

// Group-level facts a caller may feed into the bound; -1 means unknown.
struct StructuralHints {
  int icn = -1;
  int invmax = -1;
};

struct LowerBound {
  int value = 1;
  LowerBoundSource source = LowerBoundSource::Diameter;
};

// max(diameter, bridge count, 3 when icn >= 3, invmax). Complete graphs give
// (1, Complete). The icn bound is sound because three entries that pairwise
// meet in {e} force their generators' two-step connections through e; the
// invmax bound because each maximal involution's lone edge is a bridge.
LowerBound rc_lower_bound(const SimpleGraph& g, const StructuralHints& hints = {});

enum class Strategy {
  TwoMax,           // m == 2: one color per entry clique
  StarIcn1,         // m == 3, icn == 1
  StarIcn3,         // icn >= 3 and no maximal involutions: hub/spoke/clique
  InvmaxEqMax,      // every entry is an involution: one color per pendant
  DistinctWitness,  // pairwise distinct non-identity witnesses: two colors
  Awning,           // verified awning certificate: two colors
  InvmaxGe3,        // >= 3 maximal involutions: one color per pendant + 3 shared
};

const char* to_string(Strategy s);

struct StrategyAux {
  const WitnessMatrix* witnesses = nullptr;    // DistinctWitness
  const AwningCertificate* awning = nullptr;   // Awning
  // The awning construction assigns each witness's two spoke bundles the
  // colors (1,2); rows tagged B read identically in the source construction,
  // so a switch selects between the literal reading and the color-swapped
  // one. cross_validate tries literal first, then swapped.
  bool swap_b_rows = false;
};

bool strategy_applies(Strategy s, const CyclicDecomposition& d, const IcsReport& ics,
                      AwningVerdict awning);

// Builds the strategy's coloring on the clique-union graph of d. Edges the
// construction does not name default to color 1 (color 3 for the three-color
// strategies); earlier assignments win. Throws HypothesisNotMet when the
// strategy's precondition fails or required aux data is missing.
EdgeColoring build_strategy_coloring(Strategy s, const CyclicDecomposition& d,
                                     const SimpleGraph& g, const StrategyAux& aux = {});

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t colorings_tested = 0;
  double elapsed_seconds = 0.0;
};

enum class RcKind { Exact, Interval };

struct RcResult {
  RcKind kind = RcKind::Interval;
  int value = 0;  // meaningful for Exact
  int lower_bound = 1;
  int upper_bound = 0;
  LowerBoundSource lower_bound_source = LowerBoundSource::Diameter;
  std::optional<EdgeColoring> certificate;  // Exact witness, or best upper bound
  SearchStats stats;
};

struct RcBudget {
  std::uint64_t nodes_per_level = 50'000'000;
  // Levels with k > 2 run exhaustively only when |E| stays at or below this.
  int exhaustive_edge_limit = 22;
  bool gate_override = false;
};

// Exact rainbow connection number when budgets allow, otherwise a sound
// interval. Candidate colorings are verified before use as upper bounds; the
// all-distinct coloring is always available as a fallback. The level search
// is canonical (first edge color 1, new colors introduced in order, edges in
// lexicographic order) and single-threaded, so results are reproducible.
RcResult rc_exact(const SimpleGraph& g, const RcBudget& budget = {},
                  const std::vector<EdgeColoring>& upper_candidates = {},
                  const StructuralHints& hints = {});

// {"k": ..., "edges": [{"u":..,"v":..,"color":..}, ...]}
std::string coloring_json(const EdgeColoring& c, const SimpleGraph& g);

std::string rc_result_json(const RcResult& r, const SimpleGraph& g);

}  // namespace epgr
