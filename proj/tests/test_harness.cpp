#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "support/fixtures.hpp"
#include "varmap/checkpoint.hpp"
#include "varmap/dataset.hpp"
#include "varmap/eval.hpp"
#include "varmap/parse.hpp"
#include "varmap/train.hpp"

using namespace varmap;
using nlohmann::json;

namespace {

const char* kCorpusDir = VARMAP_SOURCE_DIR "/corpus";

std::vector<dataset::CorpusEntry> mini_corpus() {
  auto corpus = dataset::load_corpus(kCorpusDir);
  std::vector<dataset::CorpusEntry> subset;
  for (auto& e : corpus)
    if (e.ipa_id == "ipa05" || e.ipa_id == "ipa02") subset.push_back(e);
  return subset;
}

}  // namespace

TEST_CASE("mapping report arithmetic is consistent") {
  auto subset = mini_corpus();
  dataset::GenerateConfig gen;
  gen.seed = 21;
  auto data = dataset::generate_dataset(subset, gen);
  auto samples = dataset::to_train_samples(data.records, graph::EdgeSetConfig::all(), "eval");
  REQUIRE(!samples.empty());

  model::ModelParams params = model::init_params(8, 31, 2);
  eval::MappingEvalReport report = eval::evaluate_mappings(params, samples);

  CHECK(report.overall.total == static_cast<int>(samples.size()));
  int per_bug_total = 0;
  for (const auto& [bug, bucket] : report.per_bug) per_bug_total += bucket.total;
  CHECK(per_bug_total == report.overall.total);
  int hist_total = 0;
  for (const auto& [vars, bucket] : report.by_var_count) hist_total += bucket.total;
  CHECK(hist_total == report.overall.total);
  CHECK(report.overall.exact_rate() >= 0.0);
  CHECK(report.overall.exact_rate() <= 1.0);
  CHECK(report.overall.mean_overlap() >= 0.0);
  CHECK(report.overall.mean_overlap() <= 1.0);

  json j = json::parse(eval::mapping_report_json(report, "eval"));
  CHECK(j.at("kind") == "mapping-eval");
  CHECK(j.at("overall").at("total").get<int>() == report.overall.total);
}

TEST_CASE("repair report counts partition the dataset") {
  auto subset = mini_corpus();
  dataset::GenerateConfig gen;
  gen.seed = 23;
  auto data = dataset::generate_dataset(subset, gen);
  std::vector<dataset::DatasetRecord> eval_records;
  for (auto& r : data.records)
    if (r.split == "eval" && r.ipa_id == "ipa02") eval_records.push_back(r);
  REQUIRE(!eval_records.empty());

  std::map<std::string, lang::TestSuite> suites;
  for (const auto& e : subset) suites[e.ipa_id] = e.suite;

  eval::RepairEvalConfig cfg;
  cfg.method = eval::RepairMethod::Oracle;
  cfg.budget_seconds = 30.0;
  cfg.step_limit = 1000000;
  cfg.jobs = 2;
  auto report = eval::evaluate_repair(eval_records, suites, nullptr, cfg);

  CHECK(report.overall.total() == static_cast<int>(eval_records.size()));
  CHECK(report.overall.fixed + report.overall.exhausted + report.overall.timeout ==
        report.overall.total());
  int per_bug = 0;
  for (const auto& [bug, bucket] : report.per_bug) per_bug += bucket.total();
  CHECK(per_bug == report.overall.total());
  CHECK(report.min_mappings >= 0);
  CHECK(report.max_mappings >= report.min_mappings);

  // Cactus CSV sorted non-decreasing with one row per fixed case.
  std::string csv = eval::cactus_csv(report, cfg.method);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "program_id,method,seconds");
  double prev = -1.0;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    double seconds = std::atof(line.substr(line.rfind(',') + 1).c_str());
    CHECK(seconds >= prev);
    prev = seconds;
    ++rows;
  }
  CHECK(rows == report.overall.fixed);
}

TEST_CASE("budget of a millisecond yields timeouts under model streams") {
  auto subset = mini_corpus();
  dataset::GenerateConfig gen;
  gen.seed = 29;
  auto data = dataset::generate_dataset(subset, gen);
  std::vector<dataset::DatasetRecord> few;
  for (auto& r : data.records)
    if (few.size() < 4 && r.mapping.size() >= 3) few.push_back(r);
  REQUIRE(!few.empty());

  std::map<std::string, lang::TestSuite> suites;
  for (const auto& e : subset) suites[e.ipa_id] = e.suite;

  model::ModelParams params = model::init_params(16, 31, 5);
  eval::RepairEvalConfig cfg;
  cfg.method = eval::RepairMethod::Gnn;
  cfg.budget_seconds = 1e-9;
  auto report = eval::evaluate_repair(few, suites, &params, cfg);
  CHECK(report.overall.timeout == report.overall.total());
}

TEST_CASE("oracle stream uses exactly one mapping per case") {
  auto subset = mini_corpus();
  dataset::GenerateConfig gen;
  gen.seed = 31;
  auto data = dataset::generate_dataset(subset, gen);
  std::vector<dataset::DatasetRecord> few;
  for (auto& r : data.records)
    if (few.size() < 6 && r.bug_type == "wco") few.push_back(r);
  REQUIRE(!few.empty());

  std::map<std::string, lang::TestSuite> suites;
  for (const auto& e : subset) suites[e.ipa_id] = e.suite;

  eval::RepairEvalConfig cfg;
  cfg.method = eval::RepairMethod::Oracle;
  cfg.step_limit = 1000000;
  auto report = eval::evaluate_repair(few, suites, nullptr, cfg);
  CHECK(report.max_mappings == 1);
  CHECK(report.per_bug["wco"].fixed == report.per_bug["wco"].total());
}

TEST_CASE("ground truth mapping matches the label derivation") {
  auto subset = mini_corpus();
  dataset::GenerateConfig gen;
  gen.seed = 37;
  auto data = dataset::generate_dataset(subset, gen);
  REQUIRE(!data.records.empty());
  const auto& record = data.records[0];
  auto truth = eval::ground_truth_mapping(record, graph::EdgeSetConfig::all());
  auto sample = dataset::to_train_sample(record, graph::EdgeSetConfig::all());
  CHECK(truth.assignment == sample.labels);
  CHECK(eval::overlap_coefficient(truth, truth) == 1.0);
}
