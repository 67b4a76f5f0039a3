#pragma once

// Corpus loading and dataset generation: every program crossed with the 31
// mutation configurations and the three bug injectors, with ground-truth
// name mappings, split assignment, a JSONL on-disk format, and a manifest
// for reproducibility.

#include <cstdint>
#include <string>
#include <vector>

#include "varmap/graph.hpp"
#include "varmap/interp.hpp"
#include "varmap/mutate.hpp"
#include "varmap/train.hpp"

namespace varmap::dataset {

struct dataset_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CorpusEntry {
  std::string ipa_id;   // directory name
  std::string variant;  // file stem
  std::string source;
  lang::Program program;
  lang::TestSuite suite;
};

// Layout: <dir>/<ipa>/<variant>.c with <dir>/<ipa>/tests/NN.in + NN.out.
std::vector<CorpusEntry> load_corpus(const std::string& dir);

struct GenerateConfig {
  std::uint64_t seed = 0;
  int per_config_samples = 1;
  // Suite runs during generation; honest corpus runs stay far below this.
  std::uint64_t step_limit = 1'000'000;
  // Random bijective rename of the buggy side (ground truth updated).
  bool rename_buggy = false;
};

struct DatasetRecord {
  std::string ipa_id;
  std::string variant;
  int mutation_config_id = 0;
  std::string bug_type;
  std::string bug_location;
  std::string split;  // train | valid | eval
  std::vector<std::pair<std::string, std::string>> mapping;  // buggy -> correct
  std::string correct_source;
  std::string buggy_source;
};

struct GenerateReport {
  std::vector<DatasetRecord> records;
  std::vector<std::string> rejected;  // corpus entries that failed their own suite
  std::string manifest_json;
};

GenerateReport generate_dataset(const std::vector<CorpusEntry>& corpus,
                                const GenerateConfig& cfg);

void write_jsonl(const std::string& path, const std::vector<DatasetRecord>& records);
std::vector<DatasetRecord> read_jsonl(const std::string& path);

// Graphs plus per-variable labels for records in `split` ("" selects all).
std::vector<model::TrainSample> to_train_samples(const std::vector<DatasetRecord>& records,
                                                 const graph::EdgeSetConfig& cfg,
                                                 const std::string& split = "");

model::TrainSample to_train_sample(const DatasetRecord& record,
                                   const graph::EdgeSetConfig& cfg);

}  // namespace varmap::dataset
