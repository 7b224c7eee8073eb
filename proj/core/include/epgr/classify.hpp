#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epgr/awning.hpp"
#include "epgr/cyclic.hpp"
#include "epgr/graph.hpp"
#include "epgr/group.hpp"
#include "epgr/rainbow.hpp"

namespace epgr {

struct ClassifierInputs {
  int m = 0;
  int icn = 0;
  int invmax = 0;
  AwningVerdict awning = AwningVerdict::NotApplicable;
  bool cyclic = false;
};

enum class PredictionKind { Value, Uncovered, Suspect };

// Rule table (first match wins; awning-dependent rules never fire on Unknown):
//   R1 cyclic                          -> 1
//   R2 awning found, not cyclic        -> 2
//   R3 m == 2                          -> 2   (no finite group is the union of
//                                              two proper subgroups, so this
//                                              rule is reachable only on
//                                              synthetic inputs)
//   R4 invmax == m                     -> m
//   R5 icn <= 1, m >= 3, awning None   -> 3
//   R6 icn == 2, m >= 4                -> 3
//   R7 icn >= 3, invmax >= 3           -> invmax
//   R8 icn >= 3, invmax < 3            -> Suspect(3): the literal value
//      |invmax| would contradict the structural lower bound 3 that icn >= 3
//      forces, so the branch is flagged for oracle probing instead of trusted.
//   otherwise                          -> Uncovered
struct Prediction {
  PredictionKind kind = PredictionKind::Uncovered;
  int value = 0;  // Value and Suspect carry one
  std::string rule;
  std::string note;
  ClassifierInputs inputs;
};

Prediction classify(const ClassifierInputs& in);

enum class Agreement { Match, Mismatch, Inconclusive };

const char* to_string(Agreement a);

struct AgreementResult {
  Agreement verdict = Agreement::Inconclusive;
  std::string note;
};

// Match: exact oracle equals a Value prediction. Mismatch: exact oracle
// differs, or the predicted value falls outside an interval's bounds.
// Everything else (intervals containing the value, Suspect, Uncovered) is
// Inconclusive.
AgreementResult judge(const Prediction& p, const RcResult& oracle);

struct PipelineBudgets {
  RcBudget rc;
  std::uint64_t awning_nodes = 10'000'000;
  bool probe_orders = false;
  int probe_max_orders = 720;
  std::uint64_t probe_budget = 1'000'000;
  bool compute_power = false;
  long size_cap = 720;
  std::string base_dir = ".";
};

struct StrategyOutcome {
  Strategy strategy = Strategy::TwoMax;
  int k = 0;
  bool verified = false;
  bool swapped_b_rows = false;             // Awning only: which reading passed
  std::pair<int, int> failing_pair{-1, -1};  // when not verified
};

struct GraphSide {
  int edge_count = 0;
  GraphMetrics metrics;
  RcResult rc;
  // Oracle result rendered against the graph while it was in scope, so the
  // record can serialize certificates with edge endpoints.
  std::string rc_json;
};

struct ValidationRecord {
  std::string spec_text;
  int order = 0;
  ClassifierInputs inputs;
  Prediction prediction;
  GraphSide enhanced;
  std::optional<GraphSide> power;
  AgreementResult agreement;
  std::vector<StrategyOutcome> strategies;
  bool construction_discrepancy = false;  // some applicable strategy failed to verify
  std::optional<AwningCertificate> awning_certificate;
  std::uint64_t awning_nodes = 0;
  std::optional<OrderProbe> order_probe;
  std::optional<WitnessMatrix> witnesses;
  std::string repro_cayley;  // filled on Mismatch for offline reproduction
};

ValidationRecord cross_validate(const FiniteGroup& g, const std::string& spec_text,
                                const PipelineBudgets& budgets = {});
ValidationRecord cross_validate(const GroupSpec& spec, const PipelineBudgets& budgets = {});

struct SweepReport {
  std::vector<ValidationRecord> records;
  std::vector<std::string> warnings;
  int match = 0;
  int mismatch = 0;
  int inconclusive = 0;
};

// One spec per line; '#' starts a comment. Malformed lines are skipped with a
// warning, or throw when strict.
std::vector<GroupSpec> read_catalog(const std::string& text, bool strict,
                                    std::vector<std::string>* warnings);

// Catalog used when the CLI gets no --input: every family instance of order
// <= 16, the alternating-group fixture, and a few larger probes.
extern const char* const kDefaultCatalog;

// Validates every spec; groups run concurrently, results in catalog order.
SweepReport sweep(const std::vector<GroupSpec>& specs, const PipelineBudgets& budgets = {});

std::string validation_record_json(const ValidationRecord& r);
std::string validation_record_text(const ValidationRecord& r);
std::string sweep_report_json(const SweepReport& r);
std::string sweep_report_text(const SweepReport& r);

}  // namespace epgr
