#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "varmap/eval.hpp"
#include "varmap/parse.hpp"
#include "varmap/rng.hpp"

namespace varmap::eval {

using nlohmann::json;

double overlap_coefficient(const model::VariableMapping& a, const model::VariableMapping& b) {
  if (a.assignment.empty() && b.assignment.empty()) return 1.0;
  if (a.assignment.size() != b.assignment.size() || a.buggy_names != b.buggy_names)
    throw std::invalid_argument("overlap_coefficient: mappings cover different domains");
  size_t shared = 0;
  for (size_t i = 0; i < a.assignment.size(); ++i)
    shared += a.assignment[i] == b.assignment[i] ? 1 : 0;
  return static_cast<double>(shared) /
         static_cast<double>(std::min(a.assignment.size(), b.assignment.size()));
}

MappingEvalReport evaluate_mappings(const model::ModelParams& params,
                                    const std::vector<model::TrainSample>& split) {
  MappingEvalReport report;
  for (const auto& sample : split) {
    model::VariableMapping predicted =
        model::predict_from_graphs(sample.buggy_graph, sample.correct_graph, params);
    bool exact = predicted.assignment == sample.labels;
    size_t shared = 0;
    for (size_t i = 0; i < sample.labels.size(); ++i)
      if (i < predicted.assignment.size() &&
          predicted.assignment[i] == sample.labels[i])
        ++shared;
    double overlap = sample.labels.empty()
                         ? 1.0
                         : static_cast<double>(shared) / static_cast<double>(sample.labels.size());

    for (MappingBucket* bucket :
         {&report.per_bug[sample.bug_type], &report.overall,
          &report.by_var_count[static_cast<int>(sample.labels.size())]}) {
      bucket->total++;
      bucket->exact += exact ? 1 : 0;
      bucket->overlap_sum += overlap;
    }
  }
  return report;
}

namespace {

json bucket_json(const MappingBucket& b) {
  json j;
  j["total"] = b.total;
  j["exact"] = b.exact;
  j["exact_rate"] = b.exact_rate();
  j["mean_overlap"] = b.mean_overlap();
  return j;
}

}  // namespace

std::string mapping_report_json(const MappingEvalReport& report, const std::string& split_name) {
  json j;
  j["schema_version"] = 1;
  j["kind"] = "mapping-eval";
  j["split"] = split_name;
  j["overall"] = bucket_json(report.overall);
  json per_bug = json::object();
  for (const auto& [bug, bucket] : report.per_bug) per_bug[bug] = bucket_json(bucket);
  j["per_bug_type"] = std::move(per_bug);
  json hist = json::array();
  for (const auto& [vars, bucket] : report.by_var_count) {
    json h = bucket_json(bucket);
    h["variables"] = vars;
    hist.push_back(std::move(h));
  }
  j["by_variable_count"] = std::move(hist);
  return j.dump(2);
}

const char* repair_method_name(RepairMethod m) {
  switch (m) {
    case RepairMethod::Gnn: return "gnn";
    case RepairMethod::UniformBaseline: return "uniform-baseline";
    case RepairMethod::Oracle: return "oracle";
  }
  return "?";
}

RepairMethod parse_repair_method(const std::string& name) {
  if (name == "gnn") return RepairMethod::Gnn;
  if (name == "uniform" || name == "uniform-baseline") return RepairMethod::UniformBaseline;
  if (name == "oracle") return RepairMethod::Oracle;
  throw std::invalid_argument("unknown repair method: " + name);
}

model::VariableMapping ground_truth_mapping(const dataset::DatasetRecord& record,
                                            const graph::EdgeSetConfig& cfg) {
  model::TrainSample sample = dataset::to_train_sample(record, cfg);
  return model::mapping_from_assignment(sample.buggy_graph, sample.correct_graph,
                                        sample.labels);
}

RepairEvalReport evaluate_repair(const std::vector<dataset::DatasetRecord>& records,
                                 const std::map<std::string, lang::TestSuite>& suites_by_ipa,
                                 const model::ModelParams* params, const RepairEvalConfig& cfg) {
  if (cfg.method != RepairMethod::UniformBaseline && params == nullptr &&
      cfg.method != RepairMethod::Oracle)
    throw std::invalid_argument("gnn method requires model parameters");

  RepairEvalReport report;
  report.cases.resize(records.size());
  std::atomic<size_t> cursor{0};

  auto worker = [&] {
    for (;;) {
      size_t i = cursor.fetch_add(1);
      if (i >= records.size()) return;
      const dataset::DatasetRecord& record = records[i];
      auto suite_it = suites_by_ipa.find(record.ipa_id);
      if (suite_it == suites_by_ipa.end())
        throw std::runtime_error("no test suite for " + record.ipa_id);

      lang::Program buggy = lang::parse(record.buggy_source);
      lang::Program correct = lang::parse(record.correct_source);

      graph::EdgeSetConfig edge_cfg =
          params ? graph::EdgeSetConfig::from_mask(params->edge_mask) : graph::EdgeSetConfig{};

      repair::RepairConfig rcfg;
      rcfg.budget_seconds = cfg.budget_seconds;
      rcfg.step_limit = cfg.step_limit;

      auto start = std::chrono::steady_clock::now();
      std::unique_ptr<model::MappingStream> stream;
      switch (cfg.method) {
        case RepairMethod::Gnn:
          stream = model::enumerate_mappings(model::predict_mapping(buggy, correct, *params));
          break;
        case RepairMethod::UniformBaseline: {
          graph::ProgramGraph bg = graph::build_graph(buggy, edge_cfg);
          graph::ProgramGraph cg = graph::build_graph(correct, edge_cfg);
          stream = model::uniform_mappings(bg, cg, cfg.seed ^ fnv1a(record.buggy_source));
          break;
        }
        case RepairMethod::Oracle:
          stream = model::single_mapping(ground_truth_mapping(record, edge_cfg));
          break;
      }
      repair::RepairOutcome outcome = repair::repair(buggy, correct, *stream, suite_it->second, rcfg);
      double total_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

      RepairCaseResult& result = report.cases[i];
      result.id = record.ipa_id + "/" + record.variant + "/c" +
                  std::to_string(record.mutation_config_id) + "/" + record.bug_type;
      result.bug_type = record.bug_type;
      result.status = outcome.status;
      result.seconds = total_seconds;  // mapping generation plus repair search
      result.mappings_tried = outcome.mappings_tried;
      result.candidates_tried = outcome.candidates_tried;
    }
  };

  int jobs = std::max(1, cfg.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  long long mapping_sum = 0;
  report.min_mappings = records.empty() ? 0 : report.cases[0].mappings_tried;
  for (const auto& c : report.cases) {
    RepairBucket* buckets[] = {&report.per_bug[c.bug_type], &report.overall};
    for (RepairBucket* b : buckets) {
      if (c.status == repair::RepairOutcome::Status::Fixed) b->fixed++;
      if (c.status == repair::RepairOutcome::Status::Exhausted) b->exhausted++;
      if (c.status == repair::RepairOutcome::Status::Timeout) b->timeout++;
    }
    mapping_sum += c.mappings_tried;
    report.min_mappings = std::min(report.min_mappings, c.mappings_tried);
    report.max_mappings = std::max(report.max_mappings, c.mappings_tried);
  }
  report.mean_mappings =
      report.cases.empty() ? 0.0 : static_cast<double>(mapping_sum) / report.cases.size();
  return report;
}

namespace {

json repair_bucket_json(const RepairBucket& b) {
  json j;
  j["total"] = b.total();
  j["fixed"] = b.fixed;
  j["exhausted"] = b.exhausted;
  j["timeout"] = b.timeout;
  j["fixed_rate"] = b.fixed_rate();
  return j;
}

}  // namespace

std::string repair_report_json(const RepairEvalReport& report, const RepairEvalConfig& cfg,
                               const std::string& split_name) {
  json j;
  j["schema_version"] = 1;
  j["kind"] = "repair-eval";
  j["split"] = split_name;
  j["method"] = repair_method_name(cfg.method);
  j["budget_seconds"] = cfg.budget_seconds;
  j["step_limit"] = cfg.step_limit;
  j["timing_excludes_model_load"] = true;
  j["overall"] = repair_bucket_json(report.overall);
  json per_bug = json::object();
  for (const auto& [bug, bucket] : report.per_bug) per_bug[bug] = repair_bucket_json(bucket);
  j["per_bug_type"] = std::move(per_bug);
  json mappings;
  mappings["mean"] = report.mean_mappings;
  mappings["min"] = report.min_mappings;
  mappings["max"] = report.max_mappings;
  j["mappings_used"] = std::move(mappings);
  return j.dump(2);
}

std::string cactus_csv(const RepairEvalReport& report, RepairMethod method) {
  std::vector<const RepairCaseResult*> fixed;
  for (const auto& c : report.cases)
    if (c.status == repair::RepairOutcome::Status::Fixed) fixed.push_back(&c);
  std::sort(fixed.begin(), fixed.end(), [](const RepairCaseResult* a, const RepairCaseResult* b) {
    if (a->seconds != b->seconds) return a->seconds < b->seconds;
    return a->id < b->id;
  });
  std::string out = "program_id,method,seconds\n";
  char buf[64];
  for (const RepairCaseResult* c : fixed) {
    std::snprintf(buf, sizeof(buf), "%.6f", c->seconds);
    out += c->id + "," + repair_method_name(method) + "," + buf + "\n";
  }
  return out;
}

}  // namespace varmap::eval
