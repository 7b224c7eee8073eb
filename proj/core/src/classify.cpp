#include "epgr/classify.hpp"

#include <algorithm>
#include <future>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "epgr/error.hpp"

namespace epgr {

Prediction classify(const ClassifierInputs& in) {
  Prediction p;
  p.inputs = in;
  auto value = [&](int v, const char* rule, const char* note) {
    p.kind = PredictionKind::Value;
    p.value = v;
    p.rule = rule;
    p.note = note;
    return p;
  };
  if (in.cyclic) {
    return value(1, "R1", "cyclic group, complete graph");
  }
  if (in.awning == AwningVerdict::Found) {
    return value(2, "R2", "a verified awning yields a two-coloring");
  }
  if (in.m == 2) {
    return value(2, "R3",
                 "two entries; no group is the union of two proper subgroups, so only "
                 "synthetic decompositions reach this rule");
  }
  if (in.invmax == in.m) {
    return value(in.m, "R4", "every entry is an involution pair, the graph is a star");
  }
  if (in.icn <= 1 && in.m >= 3 && in.awning == AwningVerdict::None) {
    return value(3, "R5", "at most one isolated entry among three or more, awning ruled out");
  }
  if (in.icn == 2 && in.m >= 4) {
    return value(3, "R6", "exactly two isolated entries among four or more");
  }
  if (in.icn >= 3 && in.invmax >= 3) {
    return value(in.invmax, "R7", "pendant edges dominate");
  }
  if (in.icn >= 3 && in.invmax < 3) {
    p.kind = PredictionKind::Suspect;
    p.value = 3;
    p.rule = "R8";
    p.note =
        "the literal branch value invmax would contradict the lower bound 3 forced by "
        "three isolated entries; flagged for oracle probing instead of trusted";
    return p;
  }
  p.kind = PredictionKind::Uncovered;
  p.rule = "";
  p.note = "no rule matches these invariants";
  return p;
}

const char* to_string(Agreement a) {
  switch (a) {
    case Agreement::Match: return "MATCH";
    case Agreement::Mismatch: return "MISMATCH";
    case Agreement::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

std::string rc_brief(const RcResult& r) {
  if (r.kind == RcKind::Exact) return "EXACT " + std::to_string(r.value);
  return "INTERVAL [" + std::to_string(r.lower_bound) + "," + std::to_string(r.upper_bound) + "]";
}

}  // namespace

AgreementResult judge(const Prediction& p, const RcResult& oracle) {
  AgreementResult res;
  if (p.kind == PredictionKind::Uncovered) {
    res.verdict = Agreement::Inconclusive;
    res.note = "no prediction to compare; oracle says " + rc_brief(oracle);
    return res;
  }
  if (p.kind == PredictionKind::Suspect) {
    res.verdict = Agreement::Inconclusive;
    res.note = "suspect predictions are probed, never trusted; oracle says " + rc_brief(oracle);
    return res;
  }
  if (oracle.kind == RcKind::Exact) {
    if (oracle.value == p.value) {
      res.verdict = Agreement::Match;
      res.note = "exact oracle equals the prediction";
    } else {
      res.verdict = Agreement::Mismatch;
      res.note = "oracle " + rc_brief(oracle) + " differs from predicted " +
                 std::to_string(p.value);
    }
    return res;
  }
  if (p.value < oracle.lower_bound || p.value > oracle.upper_bound) {
    res.verdict = Agreement::Mismatch;
    res.note = "predicted " + std::to_string(p.value) + " falls outside the oracle " +
               rc_brief(oracle);
  } else {
    res.verdict = Agreement::Inconclusive;
    res.note = "oracle " + rc_brief(oracle) + " contains the predicted " +
               std::to_string(p.value);
  }
  return res;
}

namespace {

constexpr Strategy kAllStrategies[] = {
    Strategy::TwoMax,       Strategy::StarIcn1,        Strategy::StarIcn3,
    Strategy::InvmaxEqMax,  Strategy::DistinctWitness, Strategy::Awning,
    Strategy::InvmaxGe3,
};

EdgeColoring restrict_coloring(const EdgeColoring& c, const SimpleGraph& from,
                               const SimpleGraph& to) {
  EdgeColoring out{c.k, std::vector<int>(to.edge_count(), 1)};
  for (int id = 0; id < to.edge_count(); ++id) {
    auto [u, v] = to.edge(id);
    int src = from.edge_id(u, v);
    if (src < 0) {
      throw Error(ErrorCode::DimensionMismatch, "edge set is not contained in the source graph");
    }
    out.colors[id] = c.colors[src];
  }
  return out;
}

}  // namespace

ValidationRecord cross_validate(const FiniteGroup& g, const std::string& spec_text,
                                const PipelineBudgets& budgets) {
  ValidationRecord rec;
  rec.spec_text = spec_text;
  rec.order = g.order();

  CyclicDecomposition d = maximal_cyclic_subgroups(g);
  IcsReport ics = ics_report(d);
  AwningSearchResult aw = find_awning(d, budgets.awning_nodes);
  rec.awning_nodes = aw.nodes;

  rec.inputs.m = d.size();
  rec.inputs.icn = ics.icn;
  rec.inputs.invmax = static_cast<int>(ics.invmax_indices.size());
  rec.inputs.awning = aw.verdict;
  rec.inputs.cyclic = d.size() == 1;
  rec.prediction = classify(rec.inputs);

  rec.witnesses = distinct_witnesses(d);

  SimpleGraph epg = enhanced_power_graph(g, d);

  std::vector<EdgeColoring> verified;
  for (Strategy s : kAllStrategies) {
    if (!strategy_applies(s, d, ics, aw.verdict)) continue;
    StrategyAux aux;
    if (s == Strategy::DistinctWitness) aux.witnesses = &*rec.witnesses;
    if (s == Strategy::Awning) aux.awning = &*aw.certificate;
    StrategyOutcome outcome;
    outcome.strategy = s;
    EdgeColoring col = build_strategy_coloring(s, d, epg, aux);
    outcome.k = col.k;
    RainbowCheck check = is_rainbow_connected(epg, col);
    if (!check.ok && s == Strategy::Awning) {
      aux.swap_b_rows = true;
      EdgeColoring swapped = build_strategy_coloring(s, d, epg, aux);
      RainbowCheck swapped_check = is_rainbow_connected(epg, swapped);
      if (swapped_check.ok) {
        col = std::move(swapped);
        check = swapped_check;
        outcome.swapped_b_rows = true;
      }
    }
    outcome.verified = check.ok;
    if (check.ok) {
      verified.push_back(col);
    } else {
      outcome.failing_pair = check.failing_pair;
      rec.construction_discrepancy = true;
    }
    rec.strategies.push_back(outcome);
  }

  StructuralHints hints{rec.inputs.icn, rec.inputs.invmax};
  rec.enhanced.edge_count = epg.edge_count();
  rec.enhanced.metrics = graph_metrics(epg);
  rec.enhanced.rc = rc_exact(epg, budgets.rc, verified, hints);
  rec.enhanced.rc_json = rc_result_json(rec.enhanced.rc, epg);

  rec.agreement = judge(rec.prediction, rec.enhanced.rc);

  if (budgets.compute_power) {
    SimpleGraph pg = power_graph(g);
    std::vector<EdgeColoring> pg_candidates;
    pg_candidates.reserve(verified.size());
    for (const auto& c : verified) pg_candidates.push_back(restrict_coloring(c, epg, pg));
    GraphSide side;
    side.edge_count = pg.edge_count();
    side.metrics = graph_metrics(pg);
    side.rc = rc_exact(pg, budgets.rc, pg_candidates, hints);
    side.rc_json = rc_result_json(side.rc, pg);
    rec.power = std::move(side);
  }

  if (budgets.probe_orders) {
    rec.order_probe = awning_order_probe(d, budgets.probe_max_orders, budgets.probe_budget);
  }

  rec.awning_certificate = std::move(aw.certificate);

  if (rec.agreement.verdict == Agreement::Mismatch) {
    rec.repro_cayley = write_cayley_table(g);
  }
  return rec;
}

ValidationRecord cross_validate(const GroupSpec& spec, const PipelineBudgets& budgets) {
  ConstructOptions opt;
  opt.size_cap = budgets.size_cap;
  opt.base_dir = budgets.base_dir;
  FiniteGroup g = construct(spec, opt);
  return cross_validate(g, spec_to_text(spec), budgets);
}

std::vector<GroupSpec> read_catalog(const std::string& text, bool strict,
                                    std::vector<std::string>* warnings) {
  std::vector<GroupSpec> specs;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string body = line.substr(first, last - first + 1);
    try {
      specs.push_back(parse_group_spec(body));
    } catch (const Error& e) {
      std::string msg = "line " + std::to_string(lineno) + ": " + e.what();
      if (strict) throw Error(ErrorCode::ParseError, msg);
      if (warnings) warnings->push_back(msg);
    }
  }
  return specs;
}

const char* const kDefaultCatalog =
    "# Default validation catalog: every family instance of order <= 16 plus\n"
    "# larger probes where the invariants get interesting.\n"
    "CYCLIC 1\n"
    "CYCLIC 2\n"
    "CYCLIC 3\n"
    "CYCLIC 4\n"
    "CYCLIC 5\n"
    "CYCLIC 6\n"
    "CYCLIC 7\n"
    "CYCLIC 8\n"
    "CYCLIC 9\n"
    "CYCLIC 10\n"
    "CYCLIC 11\n"
    "CYCLIC 12\n"
    "CYCLIC 13\n"
    "CYCLIC 14\n"
    "CYCLIC 15\n"
    "CYCLIC 16\n"
    "DIHEDRAL 3\n"
    "DIHEDRAL 4\n"
    "DIHEDRAL 5\n"
    "DIHEDRAL 6\n"
    "DIHEDRAL 7\n"
    "DIHEDRAL 8\n"
    "DICYCLIC 2\n"
    "DICYCLIC 3\n"
    "DICYCLIC 4\n"
    "SYMMETRIC 3\n"
    "SYMMETRIC 4\n"
    "ELEMENTARY_ABELIAN 2 2\n"
    "ELEMENTARY_ABELIAN 2 3\n"
    "ELEMENTARY_ABELIAN 2 4\n"
    "ELEMENTARY_ABELIAN 3 2\n"
    "DIRECT_PRODUCT (CYCLIC 2) (CYCLIC 4)\n"
    "DIRECT_PRODUCT (CYCLIC 2) (CYCLIC 6)\n"
    "DIRECT_PRODUCT (CYCLIC 4) (CYCLIC 4)\n"
    "DIRECT_PRODUCT (CYCLIC 2) (CYCLIC 8)\n"
    "DIRECT_PRODUCT (DICYCLIC 2) (CYCLIC 3)\n"
    "DIRECT_PRODUCT (CYCLIC 3) (CYCLIC 9)\n"
    "CAYLEY_FILE a4.cayley\n";

SweepReport sweep(const std::vector<GroupSpec>& specs, const PipelineBudgets& budgets) {
  SweepReport rep;
  std::vector<std::future<ValidationRecord>> futures;
  futures.reserve(specs.size());
  for (const auto& spec : specs) {
    futures.push_back(std::async(std::launch::async,
                                 [&budgets, spec] { return cross_validate(spec, budgets); }));
  }
  for (std::size_t i = 0; i < futures.size(); ++i) {
    try {
      rep.records.push_back(futures[i].get());
      switch (rep.records.back().agreement.verdict) {
        case Agreement::Match: ++rep.match; break;
        case Agreement::Mismatch: ++rep.mismatch; break;
        case Agreement::Inconclusive: ++rep.inconclusive; break;
      }
    } catch (const Error& e) {
      rep.warnings.push_back(spec_to_text(specs[i]) + ": " + e.what());
    }
  }
  return rep;
}

namespace {

nlohmann::json inputs_json(const ClassifierInputs& in) {
  return {{"m", in.m},
          {"icn", in.icn},
          {"invmax", in.invmax},
          {"awning", to_string(in.awning)},
          {"cyclic", in.cyclic}};
}

nlohmann::json prediction_json(const Prediction& p) {
  nlohmann::json j;
  switch (p.kind) {
    case PredictionKind::Value: j["kind"] = "VALUE"; break;
    case PredictionKind::Uncovered: j["kind"] = "UNCOVERED"; break;
    case PredictionKind::Suspect: j["kind"] = "SUSPECT"; break;
  }
  if (p.kind != PredictionKind::Uncovered) j["value"] = p.value;
  j["rule"] = p.rule;
  j["note"] = p.note;
  return j;
}

nlohmann::json side_json(const GraphSide& s) {
  return {{"edge_count", s.edge_count},
          {"diameter", s.metrics.diameter},
          {"bridge_count", s.metrics.bridge_count},
          {"is_complete", s.metrics.is_complete},
          {"rc", nlohmann::json::parse(s.rc_json)}};
}

nlohmann::json probe_json(const OrderProbe& p) {
  return {{"orders_tried", p.orders_tried},
          {"found", p.found},
          {"none", p.none},
          {"unknown", p.unknown},
          {"order_invariant", p.order_invariant},
          {"example_found", p.example_found},
          {"example_none", p.example_none}};
}

nlohmann::json witnesses_json(const WitnessMatrix& w) {
  auto pairs = nlohmann::json::array();
  for (int i = 0; i < w.m; ++i) {
    for (int j = i + 1; j < w.m; ++j) {
      pairs.push_back({{"i", i}, {"j", j}, {"element", w.at(i, j)}});
    }
  }
  return {{"m", w.m}, {"pairs", std::move(pairs)}};
}

nlohmann::json record_json(const ValidationRecord& r) {
  nlohmann::json j;
  j["spec"] = r.spec_text;
  j["order"] = r.order;
  j["inputs"] = inputs_json(r.inputs);
  j["prediction"] = prediction_json(r.prediction);
  j["enhanced"] = side_json(r.enhanced);
  if (r.power) j["power"] = side_json(*r.power);
  j["agreement"] = {{"verdict", to_string(r.agreement.verdict)}, {"note", r.agreement.note}};
  auto strategies = nlohmann::json::array();
  for (const auto& s : r.strategies) {
    nlohmann::json sj = {{"strategy", to_string(s.strategy)},
                         {"k", s.k},
                         {"verified", s.verified},
                         {"swapped_b_rows", s.swapped_b_rows}};
    if (!s.verified) sj["failing_pair"] = {s.failing_pair.first, s.failing_pair.second};
    strategies.push_back(std::move(sj));
  }
  j["strategies"] = std::move(strategies);
  j["construction_discrepancy"] = r.construction_discrepancy;
  if (r.awning_certificate) {
    j["awning_certificate"] = nlohmann::json::parse(awning_certificate_json(*r.awning_certificate));
  }
  j["awning_nodes"] = r.awning_nodes;
  if (r.order_probe) j["order_probe"] = probe_json(*r.order_probe);
  if (r.witnesses) j["witnesses"] = witnesses_json(*r.witnesses);
  if (!r.repro_cayley.empty()) j["repro_cayley"] = r.repro_cayley;
  return j;
}

std::string prediction_brief(const Prediction& p) {
  switch (p.kind) {
    case PredictionKind::Value:
      return "VALUE " + std::to_string(p.value) + " (" + p.rule + ")";
    case PredictionKind::Suspect:
      return "SUSPECT " + std::to_string(p.value) + " (" + p.rule + ")";
    case PredictionKind::Uncovered: return "UNCOVERED";
  }
  return "?";
}

void side_text(std::ostream& out, const char* name, const GraphSide& s) {
  out << name << ": " << s.edge_count << " edges, diameter " << s.metrics.diameter
      << ", bridges " << s.metrics.bridge_count << ", rc " << rc_brief(s.rc) << " (lower bound "
      << s.rc.lower_bound << " from " << to_string(s.rc.lower_bound_source) << ", nodes "
      << s.rc.stats.nodes << ", colorings tested " << s.rc.stats.colorings_tested << ", "
      << std::fixed << std::setprecision(3) << s.rc.stats.elapsed_seconds << "s)\n";
}

// Aggregated checks over a sweep: each maps a hypothesis over the records to
// its support count and counterexample list. The third one is knowingly
// reported false on groups whose awning exists while icn = 0; the report
// states the facts and leaves judgment to the caller.
nlohmann::json implications_json(const SweepReport& rep) {
  int awning_support = 0, two_max_support = 0;
  std::vector<std::string> cx_le1, cx_two_max, cx_eq1;
  for (const auto& r : rep.records) {
    if (r.inputs.awning == AwningVerdict::Found) {
      ++awning_support;
      if (r.inputs.icn > 1) cx_le1.push_back(r.spec_text + " (icn=" + std::to_string(r.inputs.icn) + ")");
      if (r.inputs.icn != 1) cx_eq1.push_back(r.spec_text + " (icn=" + std::to_string(r.inputs.icn) + ")");
    }
    if (r.inputs.m == 2) {
      ++two_max_support;
      if (!(r.inputs.awning == AwningVerdict::Found &&
            (r.inputs.icn == 0 || r.inputs.icn == 2))) {
        cx_two_max.push_back(r.spec_text);
      }
    }
  }
  auto entry = [](int support, std::vector<std::string> cx) {
    return nlohmann::json{
        {"support", support}, {"holds", cx.empty()}, {"counterexamples", std::move(cx)}};
  };
  return {{"awning_implies_icn_le_1", entry(awning_support, std::move(cx_le1))},
          {"two_max_implies_awning_and_icn_0_or_2", entry(two_max_support, std::move(cx_two_max))},
          {"awning_implies_icn_eq_1", entry(awning_support, std::move(cx_eq1))}};
}

nlohmann::json suspect_probes_json(const SweepReport& rep) {
  auto rows = nlohmann::json::array();
  for (const auto& r : rep.records) {
    if (r.prediction.kind != PredictionKind::Suspect) continue;
    nlohmann::json row = {{"spec", r.spec_text},
                          {"icn", r.inputs.icn},
                          {"invmax", r.inputs.invmax},
                          {"suspect_value", r.prediction.value}};
    if (r.enhanced.rc.kind == RcKind::Exact) {
      row["oracle"] = "EXACT";
      row["oracle_value"] = r.enhanced.rc.value;
    } else {
      row["oracle"] = "INTERVAL";
      row["oracle_lower"] = r.enhanced.rc.lower_bound;
      row["oracle_upper"] = r.enhanced.rc.upper_bound;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string validation_record_json(const ValidationRecord& r) { return record_json(r).dump(); }

std::string validation_record_text(const ValidationRecord& r) {
  std::ostringstream out;
  out << "spec: " << r.spec_text << "\n";
  out << "order: " << r.order << "\n";
  out << "invariants: m=" << r.inputs.m << " icn=" << r.inputs.icn
      << " invmax=" << r.inputs.invmax << " awning=" << to_string(r.inputs.awning)
      << " cyclic=" << (r.inputs.cyclic ? "yes" : "no") << "\n";
  out << "prediction: " << prediction_brief(r.prediction);
  if (!r.prediction.note.empty()) out << " - " << r.prediction.note;
  out << "\n";
  if (!r.strategies.empty()) {
    out << "strategies:\n";
    for (const auto& s : r.strategies) {
      out << "  " << to_string(s.strategy) << " k=" << s.k
          << (s.verified ? " verified" : " FAILED");
      if (s.swapped_b_rows) out << " (swapped reading)";
      if (!s.verified) {
        out << " at pair (" << s.failing_pair.first << "," << s.failing_pair.second << ")";
      }
      out << "\n";
    }
  }
  side_text(out, "enhanced", r.enhanced);
  if (r.power) side_text(out, "power", *r.power);
  out << "agreement: " << to_string(r.agreement.verdict) << " - " << r.agreement.note << "\n";
  if (r.awning_certificate) {
    out << "awning: certificate found after " << r.awning_nodes << " nodes\n";
  } else {
    out << "awning: " << to_string(r.inputs.awning) << " after " << r.awning_nodes << " nodes\n";
  }
  if (r.order_probe) {
    const auto& p = *r.order_probe;
    out << "order probe: " << p.orders_tried << " orders, found " << p.found << ", none "
        << p.none << ", unknown " << p.unknown
        << (p.order_invariant ? ", order-invariant" : ", ORDER-DEPENDENT") << "\n";
  }
  if (r.witnesses) {
    out << "witnesses: distinct matrix over " << r.witnesses->m << " entries\n";
  }
  if (!r.repro_cayley.empty()) {
    out << "repro table:\n" << r.repro_cayley;
  }
  return out.str();
}

std::string sweep_report_json(const SweepReport& r) {
  nlohmann::json j;
  auto records = nlohmann::json::array();
  for (const auto& rec : r.records) records.push_back(record_json(rec));
  j["records"] = std::move(records);
  j["warnings"] = r.warnings;
  j["match"] = r.match;
  j["mismatch"] = r.mismatch;
  j["inconclusive"] = r.inconclusive;
  j["implications"] = implications_json(r);
  j["suspect_probes"] = suspect_probes_json(r);
  return j.dump();
}

std::string sweep_report_text(const SweepReport& r) {
  std::ostringstream out;
  out << "records: " << r.records.size() << "  match: " << r.match
      << "  mismatch: " << r.mismatch << "  inconclusive: " << r.inconclusive << "\n";
  for (const auto& rec : r.records) {
    out << std::left << std::setw(42) << rec.spec_text << " order " << std::setw(4) << rec.order
        << " m=" << std::setw(3) << rec.inputs.m << " icn=" << std::setw(3) << rec.inputs.icn
        << " invmax=" << std::setw(3) << rec.inputs.invmax << " awning=" << std::setw(15)
        << to_string(rec.inputs.awning) << " " << std::setw(16)
        << prediction_brief(rec.prediction) << " rc=" << std::setw(16)
        << rc_brief(rec.enhanced.rc) << " " << to_string(rec.agreement.verdict) << "\n";
  }
  bool suspect_header = false;
  for (const auto& rec : r.records) {
    if (rec.prediction.kind != PredictionKind::Suspect) continue;
    if (!suspect_header) {
      out << "suspect probes (R8):\n";
      suspect_header = true;
    }
    out << "  " << rec.spec_text << ": icn=" << rec.inputs.icn
        << " invmax=" << rec.inputs.invmax << " suspect=" << rec.prediction.value
        << " oracle=" << rc_brief(rec.enhanced.rc) << "\n";
  }
  nlohmann::json impl = implications_json(r);
  out << "implications:\n";
  for (auto it = impl.begin(); it != impl.end(); ++it) {
    const auto& v = it.value();
    out << "  " << it.key() << ": "
        << (v["holds"].get<bool>() ? "holds" : "FAILS") << " over "
        << v["support"].get<int>() << " records";
    if (!v["counterexamples"].empty()) {
      out << "; counterexamples:";
      for (const auto& cx : v["counterexamples"]) out << " " << cx.get<std::string>();
    }
    out << "\n";
  }
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  return out.str();
}

}  // namespace epgr
