// Acceptance gate: one criterion per command-line id, one PASS/FAIL line each.
// Run with no arguments (or "all") to execute every criterion; the exit code
// is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "epgr/classify.hpp"
#include "test_support.hpp"

using namespace epgr;

namespace {

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("FAILED: " + what);
    }
  }

  void note(const std::string& what) { notes.push_back(what); }
};

PipelineBudgets sweep_budgets() {
  PipelineBudgets b;
  b.rc.nodes_per_level = 2'000'000;
  b.base_dir = EPGR_DATA_DIR;
  return b;
}

// Criteria 8a, 8b and 9 all read the same catalog sweep; run it once.
const SweepReport& shared_sweep() {
  static SweepReport rep = [] {
    auto specs = read_catalog(kDefaultCatalog, true, nullptr);
    return sweep(specs, sweep_budgets());
  }();
  return rep;
}

ValidationRecord validate_spec(const std::string& text, PipelineBudgets b = {}) {
  b.base_dir = EPGR_DATA_DIR;
  return cross_validate(parse_group_spec(text), b);
}

bool coloring_ok(const SimpleGraph& g, const EdgeColoring& c) {
  return is_rainbow_connected(g, c).ok && test::naive_rainbow_connected(g, c.colors);
}

// 1. Every cyclic group in 2..24 yields a complete graph, prediction 1 by the
//    cyclic rule, exact oracle 1, verdict MATCH.
void criterion_1(Check& c) {
  for (int n = 2; n <= 24; ++n) {
    ValidationRecord r = validate_spec("CYCLIC " + std::to_string(n));
    const std::string tag = "CYCLIC " + std::to_string(n);
    c.expect(r.enhanced.metrics.is_complete, tag + ": graph is complete");
    c.expect(r.prediction.rule == "R1" && r.prediction.value == 1, tag + ": rule R1 value 1");
    c.expect(r.enhanced.rc.kind == RcKind::Exact && r.enhanced.rc.value == 1,
             tag + ": oracle EXACT 1");
    c.expect(r.agreement.verdict == Agreement::Match, tag + ": MATCH");
  }
  c.note("23 cyclic groups validated");
}

// 2. Groups whose maximal cyclic subgroups are all involutions reach exactly
//    |Max| colors, and the bound collapses without any level search.
void criterion_2(Check& c) {
  struct Row { const char* spec; int m; };
  for (const Row& row : {Row{"ELEMENTARY_ABELIAN 2 2", 3}, Row{"ELEMENTARY_ABELIAN 2 3", 7}}) {
    ValidationRecord r = validate_spec(row.spec);
    const std::string tag = row.spec;
    c.expect(r.inputs.m == row.m && r.inputs.invmax == row.m, tag + ": invmax == m");
    c.expect(r.prediction.rule == "R4" && r.prediction.value == row.m,
             tag + ": rule R4 predicts m");
    c.expect(r.enhanced.rc.kind == RcKind::Exact && r.enhanced.rc.value == row.m,
             tag + ": oracle EXACT " + std::to_string(row.m));
    c.expect(r.enhanced.rc.stats.nodes == 0, tag + ": no search nodes");
    c.expect(r.agreement.verdict == Agreement::Match, tag + ": MATCH");
    c.note(std::string(tag) + " -> " + std::to_string(r.enhanced.rc.value) + " colors, 0 nodes");
  }
}

// 3. The quaternion group has a machine-checkable awning whose induced
//    2-coloring rainbow-connects the graph, and the pure oracle agrees.
void criterion_3(Check& c) {
  FiniteGroup q8 = dicyclic_group(2);
  CyclicDecomposition d = maximal_cyclic_subgroups(q8);
  SimpleGraph g = enhanced_power_graph(q8);

  AwningSearchResult aw = find_awning(d);
  c.expect(aw.verdict == AwningVerdict::Found, "awning search finds a certificate");
  if (aw.certificate) {
    AwningCheck chk = verify_awning(d, *aw.certificate);
    c.expect(chk.ok, "certificate re-verifies: " + chk.violation);

    bool some_reading = false;
    for (bool swap : {false, true}) {
      StrategyAux aux;
      aux.awning = &*aw.certificate;
      aux.swap_b_rows = swap;
      EdgeColoring col = build_strategy_coloring(Strategy::Awning, d, g, aux);
      c.expect(col.k == 2, "awning coloring uses two colors");
      if (coloring_ok(g, col)) some_reading = true;
    }
    c.expect(some_reading, "some reading of the certificate rainbow-connects the graph");
  }

  RcResult pure = rc_exact(g);
  c.expect(pure.kind == RcKind::Exact && pure.value == 2, "pure search gives EXACT 2");
  c.expect(pure.stats.nodes >= 1 && pure.stats.nodes <= 32768,
           "level search stayed within 2^15 nodes (saw " + std::to_string(pure.stats.nodes) + ")");
  c.note("pure search nodes: " + std::to_string(pure.stats.nodes));

  ValidationRecord r = validate_spec("DICYCLIC 2");
  c.expect(r.prediction.rule == "R2" && r.agreement.verdict == Agreement::Match,
           "pipeline verdict MATCH under rule R2");
}

// 4. On Z_2 x Z_4 the two-isolated-entries rule predicts 3; the oracle refutes
//    2 exhaustively and certifies a 3-coloring.
void criterion_4(Check& c) {
  ValidationRecord r = validate_spec("DIRECT_PRODUCT (CYCLIC 2) (CYCLIC 4)");
  c.expect(r.inputs.icn == 2 && r.inputs.m == 4, "icn 2 over four entries");
  c.expect(r.prediction.rule == "R6" && r.prediction.value == 3, "rule R6 predicts 3");
  c.expect(r.agreement.verdict == Agreement::Match, "pipeline verdict MATCH");

  FiniteGroup g = direct_product(cyclic_group(2), cyclic_group(4));
  SimpleGraph epg = enhanced_power_graph(g);
  RcResult pure = rc_exact(epg);
  c.expect(pure.kind == RcKind::Exact && pure.value == 3, "pure search gives EXACT 3");
  c.expect(pure.lower_bound == 3 && pure.lower_bound_source == LowerBoundSource::Search,
           "2 colors were refuted by exhaustive search");
  c.expect(pure.stats.nodes <= 20000,
           "refutation stayed small (saw " + std::to_string(pure.stats.nodes) + " nodes)");
  c.expect(pure.certificate.has_value() && coloring_ok(epg, *pure.certificate),
           "3-coloring certificate rainbow-connects the graph");
  c.note("pure search nodes: " + std::to_string(pure.stats.nodes));
}

// 5. Groups with many maximal involutions land exactly on that count.
void criterion_5(Check& c) {
  struct Row { const char* spec; int invmax; };
  for (const Row& row : {Row{"SYMMETRIC 3", 3}, Row{"DIHEDRAL 4", 4}}) {
    ValidationRecord r = validate_spec(row.spec);
    const std::string tag = row.spec;
    c.expect(r.inputs.invmax == row.invmax, tag + ": expected involution count");
    c.expect(r.enhanced.rc.kind == RcKind::Exact && r.enhanced.rc.value == row.invmax,
             tag + ": oracle EXACT " + std::to_string(row.invmax));
    c.expect(r.agreement.verdict == Agreement::Match, tag + ": MATCH");
    c.note(std::string(tag) + " -> " + std::to_string(r.enhanced.rc.value));
  }
}

// 6. On every catalog group of order <= 12 where both graph oracles finish
//    exactly, the enhanced graph never needs more colors than the power graph
//    (its edge set is a superset), and enough pairs finish to make the
//    comparison meaningful.
void criterion_6(Check& c) {
  auto specs = read_catalog(kDefaultCatalog, true, nullptr);
  PipelineBudgets b;
  b.rc.nodes_per_level = 10'000'000;
  b.compute_power = true;
  b.base_dir = EPGR_DATA_DIR;

  int considered = 0;
  int both_exact = 0;
  for (const auto& spec : specs) {
    FiniteGroup g = construct(spec, {720, EPGR_DATA_DIR});
    if (g.order() > 12) continue;
    ++considered;
    const std::string tag = spec_to_text(spec);

    SimpleGraph epg = enhanced_power_graph(g);
    SimpleGraph pg = power_graph(g);
    bool subset = true;
    for (const auto& [u, v] : pg.edges()) {
      if (epg.edge_id(u, v) < 0) subset = false;
    }
    c.expect(subset, tag + ": power edges all appear in the enhanced graph");

    ValidationRecord r = cross_validate(g, tag, b);
    c.expect(r.power.has_value(), tag + ": power side computed");
    if (!r.power) continue;
    if (r.enhanced.rc.kind == RcKind::Exact && r.power->rc.kind == RcKind::Exact) {
      ++both_exact;
      c.expect(r.enhanced.rc.value <= r.power->rc.value,
               tag + ": enhanced " + std::to_string(r.enhanced.rc.value) + " <= power " +
                   std::to_string(r.power->rc.value));
    }
  }
  c.note(std::to_string(considered) + " groups of order <= 12, " + std::to_string(both_exact) +
         " with both oracles exact");
  c.expect(both_exact >= 12, "at least 12 groups resolved exactly on both sides");
}

// 7. The search oracle agrees with brute-force enumeration on every small
//    connected graph, certificates re-verify, and closed forms come out right.
void criterion_7(Check& c) {
  auto corpus = test::connected_graph_corpus(5, 7);
  c.expect(corpus.size() > 500, "corpus has enough graphs");
  int checked = 0;
  for (const auto& g : corpus) {
    RcResult r = rc_exact(g);
    int want = test::naive_rc(g);
    bool good = r.kind == RcKind::Exact && r.value == want && r.certificate.has_value() &&
                r.certificate->k == want && coloring_ok(g, *r.certificate);
    if (!good) {
      c.expect(false, "graph #" + std::to_string(checked) + " (n=" +
                          std::to_string(g.vertex_count()) + ", e=" +
                          std::to_string(g.edge_count()) + "): oracle " +
                          std::to_string(r.value) + " vs brute force " + std::to_string(want));
    }
    ++checked;
  }
  c.note(std::to_string(checked) + " graphs cross-checked against brute force");

  for (int n = 2; n <= 6; ++n) {
    c.expect(rc_exact(test::complete_graph(n)).value == 1, "complete graph needs 1");
    c.expect(rc_exact(test::path_graph(n)).value == n - 1, "path needs edge count");
  }
  c.expect(rc_exact(test::cycle_graph(4)).value == 2, "4-cycle needs 2");
  c.expect(rc_exact(test::cycle_graph(5)).value == 3, "5-cycle needs 3");
  for (int k = 1; k <= 7; ++k) {
    c.expect(rc_exact(test::star_graph(k)).value == k, "star needs its leaf count");
  }
}

std::map<Strategy, int> strategy_fires(const SweepReport& rep) {
  std::map<Strategy, int> fires;
  for (const auto& r : rep.records) {
    for (const auto& s : r.strategies) ++fires[s.strategy];
  }
  return fires;
}

// 8a. Every construction that fires on a catalog group verifies, and the five
//     group-realizable constructions each fire at least once.
void criterion_8a(Check& c) {
  const SweepReport& rep = shared_sweep();
  c.expect(rep.warnings.empty(), "catalog builds cleanly");
  for (const auto& r : rep.records) {
    c.expect(!r.construction_discrepancy, r.spec_text + ": no construction discrepancy");
    for (const auto& s : r.strategies) {
      c.expect(s.verified, r.spec_text + ": " + to_string(s.strategy) + " verifies");
    }
  }
  auto fires = strategy_fires(rep);
  for (Strategy s : {Strategy::StarIcn3, Strategy::InvmaxEqMax, Strategy::DistinctWitness,
                     Strategy::Awning, Strategy::InvmaxGe3}) {
    c.expect(fires.count(s) == 1 && fires[s] >= 1,
             std::string(to_string(s)) + " fires on some catalog group");
  }
  std::ostringstream line;
  for (const auto& [s, n] : fires) line << to_string(s) << "=" << n << " ";
  c.note("strategy firing counts: " + line.str());
}

// 8b. Full firing coverage: additionally demands TWO_MAX and STAR_ICN1 fire on
//     some catalog group. No finite group can satisfy either hypothesis, so
//     this criterion fails by design and documents why.
void criterion_8b(Check& c) {
  auto fires = strategy_fires(shared_sweep());
  c.expect(fires.count(Strategy::TwoMax) > 0, "TWO_MAX fires on some catalog group");
  c.expect(fires.count(Strategy::StarIcn1) > 0, "STAR_ICN1 fires on some catalog group");
  c.note("TWO_MAX needs exactly two maximal cyclic subgroups, but no finite group is the "
         "union of two proper subgroups, so no group input can ever exercise it.");
  c.note("STAR_ICN1 needs three maximal cyclic subgroups with exactly one isolated entry, "
         "but with three subgroups the isolated count is forced to 0 or 3.");
  c.note("Both constructions are exercised against synthetic decompositions in the unit "
         "suite instead; see tests/unit/rainbow_test.cpp.");
}

// 9. The sweep reports its implication probes and suspect-rule rows as data
//    with definite oracle values, never as silent assertions.
void criterion_9(Check& c) {
  const SweepReport& rep = shared_sweep();
  nlohmann::json j = nlohmann::json::parse(sweep_report_json(rep));

  const auto& impl = j["implications"];
  c.expect(impl["awning_implies_icn_le_1"]["support"].get<int>() >= 4,
           "first implication has support");
  c.expect(impl["awning_implies_icn_le_1"]["holds"].get<bool>(), "first implication holds");
  c.expect(!impl["awning_implies_icn_eq_1"]["holds"].get<bool>() &&
               impl["awning_implies_icn_eq_1"]["counterexamples"].size() >= 1,
           "strict version is reported false with counterexamples, not hidden");
  c.expect(impl["two_max_implies_awning_and_icn_0_or_2"]["support"].get<int>() == 0,
           "two-entry implication is vacuous over real groups");

  const auto& probes = j["suspect_probes"];
  c.expect(probes.size() == 2, "both suspect-rule groups are probed");
  for (const auto& row : probes) {
    c.expect(row["oracle"] == "EXACT", row["spec"].get<std::string>() + ": definite oracle");
    c.expect(row["oracle_value"].get<int>() == 3,
             row["spec"].get<std::string>() + ": oracle value 3");
  }
  for (const auto& r : rep.records) {
    if (r.prediction.kind == PredictionKind::Suspect) {
      c.expect(r.agreement.verdict == Agreement::Inconclusive,
               r.spec_text + ": suspect prediction stays inconclusive");
    }
  }
  c.expect(j["match"].get<int>() == 33 && j["mismatch"].get<int>() == 0,
           "sweep tallies 33 matches and no mismatches");
  c.note("implications and suspect probes reported over " +
         std::to_string(rep.records.size()) + " records");
}

struct Criterion {
  std::string id;
  std::string title;
  double limit_seconds;
  std::function<void(Check&)> run;
};

const std::vector<Criterion>& registry() {
  static const std::vector<Criterion> all = {
      {"1", "cyclic groups: complete graph, one color, MATCH", 1.0, criterion_1},
      {"2", "involution-only decompositions collapse to |Max| without search", 5.0, criterion_2},
      {"3", "quaternion group: verified awning, 2-coloring, exact oracle 2", 5.0, criterion_3},
      {"4", "Z2 x Z4: predicted 3, two colors refuted, three certified", 10.0, criterion_4},
      {"5", "S3 and D4 land on the maximal-involution count", 30.0, criterion_5},
      {"6", "enhanced rc <= power rc across small catalog groups", 120.0, criterion_6},
      {"7", "search oracle matches brute force on all small graphs", 60.0, criterion_7},
      {"8a", "every firing construction verifies; realizable ones all fire", 120.0, criterion_8a},
      {"8b", "unrealizable constructions also fire (documented impossibility)", 120.0,
       criterion_8b},
      {"9", "implication probes and suspect rows reported with definite oracles", 120.0,
       criterion_9},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> wanted;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) != "all") wanted.insert(argv[i]);
  }

  int failures = 0;
  for (const auto& cr : registry()) {
    if (!wanted.empty() && !wanted.count(cr.id)) continue;
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("unexpected exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > cr.limit_seconds) {
      c.expect(false, "exceeded time limit of " + std::to_string(cr.limit_seconds) + "s");
    }

    std::printf("ACCEPTANCE %s %s %s\n", cr.id.c_str(), c.ok ? "PASS" : "FAIL",
                cr.title.c_str());
    for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
    std::printf("    elapsed: %.2fs\n", elapsed);
    if (!c.ok) ++failures;
  }
  return failures;
}
