// Command line front end: construct finite groups, compute the structural
// invariants of their maximal cyclic decompositions, run the rainbow
// connection oracle against the rule-based prediction, and sweep whole
// catalogs of groups.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "epgr/classify.hpp"

namespace {

struct CommonOpts {
  std::string spec_text;
  std::string input_path;
  std::string base_dir = ".";
  std::string out_path;
  std::string format = "text";
  bool override_size_cap = false;
};

struct BudgetOpts {
  std::uint64_t rc_budget = 0;  // 0 = subcommand default
  std::uint64_t awning_budget = 10'000'000;
  int probe_orders = 0;
  bool compute_power = false;
};

epgr::FiniteGroup load_group(const CommonOpts& opts) {
  if (!opts.input_path.empty()) {
    return epgr::load_cayley_file(opts.input_path);
  }
  epgr::GroupSpec spec = epgr::parse_group_spec(opts.spec_text);
  epgr::ConstructOptions c;
  c.base_dir = opts.base_dir;
  if (opts.override_size_cap) c.size_cap = 1L << 30;
  return epgr::construct(spec, c);
}

std::string spec_label(const CommonOpts& opts) {
  if (!opts.input_path.empty()) return "CAYLEY_FILE " + opts.input_path;
  return epgr::spec_to_text(epgr::parse_group_spec(opts.spec_text));
}

// Writes to --out when given (with a one-line note on stdout), else stdout.
void emit(const CommonOpts& opts, const std::string& payload) {
  if (opts.out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(opts.out_path);
  if (!out) throw epgr::Error(epgr::ErrorCode::ParseError, "cannot open " + opts.out_path);
  out << payload;
  if (!payload.empty() && payload.back() != '\n') out << "\n";
  std::cout << "wrote " << opts.out_path << "\n";
}

void add_source_options(CLI::App* cmd, CommonOpts& opts, bool need_source) {
  auto* spec = cmd->add_option("--spec", opts.spec_text,
                               "group description, e.g. \"DIHEDRAL 5\" or "
                               "\"DIRECT_PRODUCT (CYCLIC 2) (CYCLIC 4)\"");
  auto* input = cmd->add_option("--input", opts.input_path, "Cayley table file");
  if (need_source) {
    spec->excludes(input);
    input->excludes(spec);
  }
  cmd->add_option("--base-dir", opts.base_dir,
                  "directory CAYLEY_FILE paths resolve against");
  cmd->add_option("--out", opts.out_path, "write the result to a file instead of stdout");
  cmd->add_flag("--override-size-cap", opts.override_size_cap,
                "lift the default order cap of 720 and the exhaustive-search edge gate");
}

void require_source(const CommonOpts& opts) {
  if (opts.spec_text.empty() && opts.input_path.empty()) {
    throw epgr::Error(epgr::ErrorCode::BadParameter, "one of --spec or --input is required");
  }
}

epgr::PipelineBudgets make_budgets(const CommonOpts& common, const BudgetOpts& budgets,
                                   std::uint64_t default_rc_budget) {
  epgr::PipelineBudgets b;
  b.rc.nodes_per_level = budgets.rc_budget > 0 ? budgets.rc_budget : default_rc_budget;
  b.rc.gate_override = common.override_size_cap;
  b.awning_nodes = budgets.awning_budget;
  if (budgets.probe_orders > 0) {
    b.probe_orders = true;
    b.probe_max_orders = budgets.probe_orders;
  }
  b.compute_power = budgets.compute_power;
  if (common.override_size_cap) b.size_cap = 1L << 30;
  b.base_dir = common.base_dir;
  return b;
}

int cmd_group(const CommonOpts& opts) {
  require_source(opts);
  epgr::FiniteGroup g = load_group(opts);
  std::string table = epgr::write_cayley_table(g);
  std::ostringstream summary;
  summary << spec_label(opts) << ": order " << g.order() << "\n";
  if (opts.out_path.empty()) {
    std::cout << table;
    std::cerr << summary.str();
  } else {
    emit(opts, table);
    std::cout << summary.str();
  }
  return 0;
}

int cmd_invariants(const CommonOpts& opts, const BudgetOpts& budgets) {
  require_source(opts);
  epgr::FiniteGroup g = load_group(opts);
  epgr::CyclicDecomposition d = epgr::maximal_cyclic_subgroups(g);
  epgr::IcsReport ics = epgr::ics_report(d);
  epgr::AwningSearchResult aw = epgr::find_awning(d, budgets.awning_budget);
  std::optional<epgr::WitnessMatrix> witnesses = epgr::distinct_witnesses(d);
  std::optional<epgr::OrderProbe> probe;
  if (budgets.probe_orders > 0) {
    probe = epgr::awning_order_probe(d, budgets.probe_orders, budgets.awning_budget);
  }

  epgr::ClassifierInputs in;
  in.m = d.size();
  in.icn = ics.icn;
  in.invmax = static_cast<int>(ics.invmax_indices.size());
  in.awning = aw.verdict;
  in.cyclic = d.size() == 1;
  epgr::Prediction pred = epgr::classify(in);

  if (opts.format == "dot") {
    emit(opts, epgr::export_dot(epgr::enhanced_power_graph(g, d), g.labels()));
    return 0;
  }

  if (opts.format == "json") {
    nlohmann::json j;
    j["spec"] = spec_label(opts);
    j["order"] = g.order();
    j["m"] = d.size();
    auto entries = nlohmann::json::array();
    for (const auto& e : d.entries()) {
      entries.push_back({{"generator", e.generator},
                         {"size", e.members.size()},
                         {"members", e.members}});
    }
    j["entries"] = std::move(entries);
    j["ics_indices"] = ics.ics_indices;
    j["icn"] = ics.icn;
    j["invmax_indices"] = ics.invmax_indices;
    auto excl = nlohmann::json::array();
    for (const auto& e : ics.exclusions) {
      excl.push_back({{"index", e.index}, {"other", e.other}, {"witness", e.witness}});
    }
    j["exclusions"] = std::move(excl);
    j["awning"] = {{"verdict", epgr::to_string(aw.verdict)}, {"nodes", aw.nodes}};
    if (aw.certificate) {
      j["awning"]["certificate"] =
          nlohmann::json::parse(epgr::awning_certificate_json(*aw.certificate));
    }
    if (witnesses) {
      auto pairs = nlohmann::json::array();
      for (int i = 0; i < witnesses->m; ++i) {
        for (int k = i + 1; k < witnesses->m; ++k) {
          pairs.push_back({{"i", i}, {"j", k}, {"element", witnesses->at(i, k)}});
        }
      }
      j["witnesses"] = {{"m", witnesses->m}, {"pairs", std::move(pairs)}};
    }
    if (probe) {
      j["order_probe"] = {{"orders_tried", probe->orders_tried},
                          {"found", probe->found},
                          {"none", probe->none},
                          {"unknown", probe->unknown},
                          {"order_invariant", probe->order_invariant}};
    }
    j["prediction"] = nlohmann::json{{"kind", pred.kind == epgr::PredictionKind::Value
                                                  ? "VALUE"
                                                  : pred.kind == epgr::PredictionKind::Suspect
                                                        ? "SUSPECT"
                                                        : "UNCOVERED"},
                                     {"rule", pred.rule},
                                     {"note", pred.note}};
    if (pred.kind != epgr::PredictionKind::Uncovered) j["prediction"]["value"] = pred.value;
    emit(opts, j.dump(2));
    return 0;
  }

  std::ostringstream out;
  out << "spec: " << spec_label(opts) << "\n";
  out << "order: " << g.order() << "\n";
  out << "entries (" << d.size() << "):\n";
  for (int i = 0; i < d.size(); ++i) {
    const auto& e = d.entry(i);
    out << "  " << i << ": generator " << e.generator << " (" << g.label(e.generator)
        << "), size " << e.members.size() << "\n";
  }
  out << "icn: " << ics.icn << "\n";
  out << "invmax: " << ics.invmax_indices.size() << "\n";
  out << "awning: " << epgr::to_string(aw.verdict) << " after " << aw.nodes << " nodes\n";
  out << "distinct witnesses: " << (witnesses ? "yes" : "no") << "\n";
  if (probe) {
    out << "order probe: " << probe->orders_tried << " orders, found " << probe->found
        << ", none " << probe->none << ", unknown " << probe->unknown
        << (probe->order_invariant ? ", order-invariant" : ", ORDER-DEPENDENT") << "\n";
  }
  out << "prediction: ";
  switch (pred.kind) {
    case epgr::PredictionKind::Value: out << "VALUE " << pred.value; break;
    case epgr::PredictionKind::Suspect: out << "SUSPECT " << pred.value; break;
    case epgr::PredictionKind::Uncovered: out << "UNCOVERED"; break;
  }
  if (!pred.rule.empty()) out << " (" << pred.rule << ")";
  out << " - " << pred.note << "\n";
  emit(opts, out.str());
  return 0;
}

int cmd_rc(const CommonOpts& opts, const BudgetOpts& budgets, const std::string& which) {
  require_source(opts);
  epgr::FiniteGroup g = load_group(opts);
  BudgetOpts b = budgets;
  b.compute_power = which == "power" || which == "both";
  epgr::PipelineBudgets pb = make_budgets(opts, b, 50'000'000);
  epgr::ValidationRecord rec = epgr::cross_validate(g, spec_label(opts), pb);

  if (opts.format == "dot") {
    const bool power_side = which == "power";
    epgr::SimpleGraph graph =
        power_side ? epgr::power_graph(g) : epgr::enhanced_power_graph(g);
    const epgr::RcResult& rc = power_side ? rec.power->rc : rec.enhanced.rc;
    const epgr::EdgeColoring* cert = rc.certificate ? &*rc.certificate : nullptr;
    emit(opts, epgr::export_dot(graph, g.labels(), cert));
  } else if (opts.format == "json") {
    emit(opts, epgr::validation_record_json(rec));
  } else {
    emit(opts, epgr::validation_record_text(rec));
  }
  return rec.agreement.verdict == epgr::Agreement::Mismatch ? 3 : 0;
}

int cmd_sweep(const CommonOpts& opts, const BudgetOpts& budgets, bool strict) {
  std::string catalog_text;
  std::string base_dir = opts.base_dir;
  if (!opts.input_path.empty()) {
    std::ifstream in(opts.input_path);
    if (!in) {
      throw epgr::Error(epgr::ErrorCode::ParseError, "cannot open " + opts.input_path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    catalog_text = ss.str();
    if (base_dir == ".") {
      base_dir = std::filesystem::path(opts.input_path).parent_path().string();
      if (base_dir.empty()) base_dir = ".";
    }
  } else {
    catalog_text = epgr::kDefaultCatalog;
  }

  std::vector<std::string> warnings;
  std::vector<epgr::GroupSpec> specs = epgr::read_catalog(catalog_text, strict, &warnings);
  CommonOpts adjusted = opts;
  adjusted.base_dir = base_dir;
  epgr::PipelineBudgets pb = make_budgets(adjusted, budgets, 2'000'000);
  epgr::SweepReport report = epgr::sweep(specs, pb);
  report.warnings.insert(report.warnings.begin(), warnings.begin(), warnings.end());

  if (opts.format == "json") {
    emit(opts, epgr::sweep_report_json(report));
  } else {
    emit(opts, epgr::sweep_report_text(report));
  }
  return report.mismatch > 0 ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rainbow connection analysis of enhanced power graphs of finite groups"};
  app.require_subcommand(1);

  CommonOpts group_opts, inv_opts, rc_opts, sweep_opts;
  BudgetOpts inv_budgets, rc_budgets, sweep_budgets;
  std::string which = "enhanced";
  bool strict = false;

  CLI::App* group_cmd =
      app.add_subcommand("group", "construct a group and print its Cayley table");
  add_source_options(group_cmd, group_opts, true);

  CLI::App* inv_cmd = app.add_subcommand(
      "invariants", "decomposition, isolation counts, awning search, prediction");
  add_source_options(inv_cmd, inv_opts, true);
  inv_cmd->add_option("--format", inv_opts.format, "text, json, or dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  inv_cmd->add_option("--awning-budget", inv_budgets.awning_budget,
                      "node budget for the awning search");
  inv_cmd->add_option("--probe-orders", inv_budgets.probe_orders,
                      "probe up to this many entry orders for awning existence");

  CLI::App* rc_cmd = app.add_subcommand(
      "rc", "rainbow connection oracle cross-validated against the prediction");
  add_source_options(rc_cmd, rc_opts, true);
  rc_cmd->add_option("--format", rc_opts.format, "text, json, or dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  rc_cmd->add_option("--which", which, "enhanced, power, or both")
      ->check(CLI::IsMember({"enhanced", "power", "both"}));
  rc_cmd->add_option("--rc-budget", rc_budgets.rc_budget,
                     "search nodes per palette level (default 50000000)")
      ->envname("EPG_RAINBOW_BUDGET");
  rc_cmd->add_option("--awning-budget", rc_budgets.awning_budget,
                     "node budget for the awning search");
  rc_cmd->add_option("--probe-orders", rc_budgets.probe_orders,
                     "probe up to this many entry orders for awning existence");

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "validate a whole catalog of groups (built-in catalog when no --input)");
  add_source_options(sweep_cmd, sweep_opts, false);
  sweep_cmd->add_option("--format", sweep_opts.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  sweep_cmd->add_option("--which", which, "enhanced, power, or both")
      ->check(CLI::IsMember({"enhanced", "power", "both"}));
  sweep_cmd->add_option("--rc-budget", sweep_budgets.rc_budget,
                        "search nodes per palette level (default 2000000)")
      ->envname("EPG_RAINBOW_BUDGET");
  sweep_cmd->add_option("--awning-budget", sweep_budgets.awning_budget,
                        "node budget for the awning search");
  sweep_cmd->add_option("--probe-orders", sweep_budgets.probe_orders,
                        "probe up to this many entry orders for awning existence");
  sweep_cmd->add_flag("--strict", strict, "reject catalogs with unparseable lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (group_cmd->parsed()) return cmd_group(group_opts);
    if (inv_cmd->parsed()) return cmd_invariants(inv_opts, inv_budgets);
    if (rc_cmd->parsed()) {
      rc_budgets.compute_power = which == "power" || which == "both";
      return cmd_rc(rc_opts, rc_budgets, which);
    }
    if (sweep_cmd->parsed()) {
      sweep_budgets.compute_power = which == "power" || which == "both";
      return cmd_sweep(sweep_opts, sweep_budgets, strict);
    }
  } catch (const epgr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
