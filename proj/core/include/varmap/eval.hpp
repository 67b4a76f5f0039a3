#pragma once

// Evaluation harness: mapping quality metrics (exact-match rate, overlap
// coefficient, per-variable-count histogram) and repair benchmarking with
// gnn / uniform-baseline / oracle mapping sources, cactus-plot data included.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "varmap/dataset.hpp"
#include "varmap/model.hpp"
#include "varmap/repair.hpp"
#include "varmap/train.hpp"

namespace varmap::eval {

// |pairs in both| / min(|a|, |b|). Both mappings must cover the same
// buggy-variable domain; two empty mappings overlap fully.
double overlap_coefficient(const model::VariableMapping& a, const model::VariableMapping& b);

struct MappingBucket {
  int exact = 0;
  int total = 0;
  double overlap_sum = 0.0;

  double exact_rate() const { return total ? static_cast<double>(exact) / total : 0.0; }
  double mean_overlap() const { return total ? overlap_sum / total : 0.0; }
};

struct MappingEvalReport {
  std::map<std::string, MappingBucket> per_bug;  // "wco" | "vm" | "me"
  MappingBucket overall;
  std::map<int, MappingBucket> by_var_count;
};

MappingEvalReport evaluate_mappings(const model::ModelParams& params,
                                    const std::vector<model::TrainSample>& split);

std::string mapping_report_json(const MappingEvalReport& report, const std::string& split_name);

enum class RepairMethod { Gnn, UniformBaseline, Oracle };
const char* repair_method_name(RepairMethod m);
RepairMethod parse_repair_method(const std::string& name);

struct RepairEvalConfig {
  RepairMethod method = RepairMethod::Gnn;
  double budget_seconds = 60.0;
  std::uint64_t step_limit = lang::kDefaultStepLimit;
  std::uint64_t seed = 0;  // uniform-baseline stream order
  int jobs = 1;
};

struct RepairCaseResult {
  std::string id;  // ipa/variant/config/bug
  std::string bug_type;
  repair::RepairOutcome::Status status = repair::RepairOutcome::Status::Exhausted;
  double seconds = 0.0;
  int mappings_tried = 0;
  int candidates_tried = 0;
};

struct RepairBucket {
  int fixed = 0;
  int exhausted = 0;
  int timeout = 0;

  int total() const { return fixed + exhausted + timeout; }
  double fixed_rate() const { return total() ? static_cast<double>(fixed) / total() : 0.0; }
};

struct RepairEvalReport {
  std::map<std::string, RepairBucket> per_bug;
  RepairBucket overall;
  int min_mappings = 0;
  int max_mappings = 0;
  double mean_mappings = 0.0;
  std::vector<RepairCaseResult> cases;
};

// One repair call per dataset record; per-case timing covers mapping
// generation plus the repair search (checkpoint load time excluded — the
// params are already in memory).
RepairEvalReport evaluate_repair(const std::vector<dataset::DatasetRecord>& records,
                                 const std::map<std::string, lang::TestSuite>& suites_by_ipa,
                                 const model::ModelParams* params, const RepairEvalConfig& cfg);

std::string repair_report_json(const RepairEvalReport& report, const RepairEvalConfig& cfg,
                               const std::string& split_name);

// Sorted non-decreasing repair times, one row per fixed program.
std::string cactus_csv(const RepairEvalReport& report, RepairMethod method);

// Ground truth mapping of a record, as a variable-level assignment.
model::VariableMapping ground_truth_mapping(const dataset::DatasetRecord& record,
                                            const graph::EdgeSetConfig& cfg);

}  // namespace varmap::eval
