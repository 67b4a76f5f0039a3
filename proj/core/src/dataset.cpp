#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "varmap/dataset.hpp"
#include "varmap/parse.hpp"
#include "varmap/print.hpp"
#include "varmap/rng.hpp"

namespace varmap::dataset {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  if (!fs::is_directory(dir)) throw dataset_error("corpus directory not found: " + dir);
  std::vector<CorpusEntry> out;
  std::vector<fs::path> ipa_dirs;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_directory()) ipa_dirs.push_back(entry.path());
  std::sort(ipa_dirs.begin(), ipa_dirs.end());

  for (const auto& ipa_dir : ipa_dirs) {
    fs::path tests = ipa_dir / "tests";
    if (!fs::is_directory(tests)) continue;
    lang::TestSuite suite = lang::load_test_suite(tests.string());
    std::vector<fs::path> sources;
    for (const auto& f : fs::directory_iterator(ipa_dir))
      if (f.is_regular_file() && f.path().extension() == ".c") sources.push_back(f.path());
    std::sort(sources.begin(), sources.end());
    for (const auto& src_path : sources) {
      std::ifstream f(src_path, std::ios::binary);
      std::ostringstream ss;
      ss << f.rdbuf();
      CorpusEntry entry;
      entry.ipa_id = ipa_dir.filename().string();
      entry.variant = src_path.stem().string();
      entry.source = ss.str();
      entry.program = lang::parse(entry.source);
      entry.suite = suite;
      out.push_back(std::move(entry));
    }
  }
  if (out.empty()) throw dataset_error("corpus is empty: " + dir);
  return out;
}

namespace {

// Split by seed-program identity: the last variant of each assignment is
// held out for evaluation; the rest go 80/20 to train/valid.
std::map<std::pair<std::string, std::string>, std::string> assign_splits(
    const std::vector<CorpusEntry>& corpus, std::uint64_t seed) {
  std::map<std::string, std::string> last_variant;
  for (const auto& e : corpus) {
    auto& lv = last_variant[e.ipa_id];
    if (e.variant > lv) lv = e.variant;
  }
  std::map<std::pair<std::string, std::string>, std::string> splits;
  int valid_count = 0;
  std::pair<std::string, std::string> first_pool;
  for (const auto& e : corpus) {
    std::pair<std::string, std::string> key{e.ipa_id, e.variant};
    if (e.variant == last_variant[e.ipa_id]) {
      splits[key] = "eval";
      continue;
    }
    if (first_pool.first.empty()) first_pool = key;
    bool valid = fnv1a(e.ipa_id + "/" + e.variant, seed ^ 0xABCDEF12345ull) % 5 == 0;
    splits[key] = valid ? "valid" : "train";
    valid_count += valid ? 1 : 0;
  }
  if (valid_count == 0 && !first_pool.first.empty()) splits[first_pool] = "valid";
  return splits;
}

DatasetRecord record_from_pair(const mutate::BuggyPair& pair, const CorpusEntry& entry,
                               int config_id, const std::string& split) {
  DatasetRecord r;
  r.ipa_id = entry.ipa_id;
  r.variant = entry.variant;
  r.mutation_config_id = config_id;
  r.bug_type = mutate::bug_type_name(pair.bug_type);
  r.bug_location = pair.bug_location;
  r.split = split;
  r.mapping = pair.mapping.pairs;
  std::sort(r.mapping.begin(), r.mapping.end());  // JSONL objects sort keys
  r.correct_source = lang::pretty_print(pair.correct);
  r.buggy_source = lang::pretty_print(pair.buggy);
  return r;
}

mutate::BuggyPair rename_buggy_side(const mutate::BuggyPair& pair, std::uint64_t seed) {
  std::vector<std::string> names = lang::variable_names(pair.buggy);
  std::vector<std::string> fresh;
  for (size_t i = 0; i < names.size(); ++i) fresh.push_back("w" + std::to_string(i));
  Rng rng(seed);
  rng.shuffle(fresh);

  lang::RenameMap to_fresh;
  for (size_t i = 0; i < names.size(); ++i) to_fresh.pairs.emplace_back(names[i], fresh[i]);

  mutate::BuggyPair renamed = pair;
  renamed.buggy = lang::rename_forward(pair.buggy, to_fresh);
  renamed.mapping.pairs.clear();
  for (size_t i = 0; i < names.size(); ++i) {
    const std::string* target = pair.mapping.target_for(names[i]);
    renamed.mapping.pairs.emplace_back(fresh[i], target ? *target : names[i]);
  }
  return renamed;
}

}  // namespace

GenerateReport generate_dataset(const std::vector<CorpusEntry>& corpus,
                                const GenerateConfig& cfg) {
  GenerateReport report;
  auto splits = assign_splits(corpus, cfg.seed);

  json manifest;
  manifest["schema_version"] = 1;
  manifest["seed"] = cfg.seed;
  manifest["per_config_samples"] = cfg.per_config_samples;
  manifest["step_limit"] = cfg.step_limit;
  manifest["rename_buggy"] = cfg.rename_buggy;
  json corpus_json = json::array();

  for (const auto& entry : corpus) {
    json centry;
    centry["ipa"] = entry.ipa_id;
    centry["variant"] = entry.variant;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a(entry.source)));
    centry["source_fnv"] = hash;
    centry["tests"] = entry.suite.cases.size();
    corpus_json.push_back(centry);

    if (!lang::passes_suite(entry.program, entry.suite, cfg.step_limit)) {
      report.rejected.push_back(entry.ipa_id + "/" + entry.variant);
      continue;
    }
    const std::string& split = splits.at({entry.ipa_id, entry.variant});

    for (int config_id = 1; config_id <= mutate::kNumMutationConfigs; ++config_id) {
      mutate::MutationConfig mcfg = mutate::MutationConfig::from_id(config_id);
      for (int k = 0; k < cfg.per_config_samples; ++k) {
        std::uint64_t task_seed = fnv1a(entry.ipa_id + "/" + entry.variant + "#" +
                                            std::to_string(config_id) + "." + std::to_string(k),
                                        cfg.seed);
        mutate::MutationResult mutated = mutate::apply_config(entry.program, mcfg, task_seed);
        if (!mutated.applied) continue;
        if (!lang::passes_suite(mutated.program, entry.suite, cfg.step_limit))
          throw dataset_error("mutation changed behavior of " + entry.ipa_id + "/" +
                              entry.variant + " config " + std::to_string(config_id));

        const std::array<mutate::BugType, 3> kinds = {
            mutate::BugType::Wco, mutate::BugType::Vm, mutate::BugType::Me};
        for (auto kind : kinds) {
          std::uint64_t bug_seed = fnv1a(std::string(mutate::bug_type_name(kind)), task_seed);
          std::vector<mutate::BuggyPair> candidates;
          switch (kind) {
            case mutate::BugType::Wco:
              candidates = mutate::inject_wco(mutated.program, entry.program, entry.suite,
                                              bug_seed, cfg.step_limit);
              break;
            case mutate::BugType::Vm:
              candidates = mutate::inject_vm(mutated.program, entry.program, entry.suite,
                                             bug_seed, cfg.step_limit);
              break;
            case mutate::BugType::Me:
              candidates = mutate::inject_me(mutated.program, entry.program, entry.suite,
                                             bug_seed, cfg.step_limit);
              break;
          }
          if (candidates.empty()) continue;
          Rng pick(bug_seed ^ 0x5bd1e995u);
          mutate::BuggyPair& chosen =
              candidates[static_cast<size_t>(pick.next_int(static_cast<int>(candidates.size())))];
          chosen.mutation_config_id = config_id;
          if (cfg.rename_buggy) chosen = rename_buggy_side(chosen, bug_seed ^ 0x27d4eb2full);
          report.records.push_back(record_from_pair(chosen, entry, config_id, split));
        }
      }
    }
  }

  manifest["corpus"] = std::move(corpus_json);
  manifest["rejected"] = report.rejected;
  json counts;
  counts["total"] = report.records.size();
  for (const char* split : {"train", "valid", "eval"})
    counts[split] = std::count_if(report.records.begin(), report.records.end(),
                                  [split](const DatasetRecord& r) { return r.split == split; });
  for (const char* bug : {"wco", "vm", "me"})
    counts[bug] = std::count_if(report.records.begin(), report.records.end(),
                                [bug](const DatasetRecord& r) { return r.bug_type == bug; });
  manifest["counts"] = std::move(counts);
  report.manifest_json = manifest.dump(2);
  return report;
}

void write_jsonl(const std::string& path, const std::vector<DatasetRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw dataset_error("cannot write dataset: " + path);
  for (const auto& r : records) {
    json j;
    j["ipa_id"] = r.ipa_id;
    j["variant"] = r.variant;
    j["mutation_config_id"] = r.mutation_config_id;
    j["bug_type"] = r.bug_type;
    j["bug_location"] = r.bug_location;
    j["split"] = r.split;
    json mapping = json::object();
    for (const auto& [from, to] : r.mapping) mapping[from] = to;
    j["mapping"] = std::move(mapping);
    j["correct_source"] = r.correct_source;
    j["buggy_source"] = r.buggy_source;
    out << j.dump() << "\n";
  }
}

std::vector<DatasetRecord> read_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dataset_error("cannot open dataset: " + path);
  std::vector<DatasetRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw dataset_error("bad JSONL at " + path + ":" + std::to_string(line_no));
    DatasetRecord r;
    r.ipa_id = j.at("ipa_id").get<std::string>();
    r.variant = j.at("variant").get<std::string>();
    r.mutation_config_id = j.at("mutation_config_id").get<int>();
    r.bug_type = j.at("bug_type").get<std::string>();
    r.bug_location = j.value("bug_location", "");
    r.split = j.at("split").get<std::string>();
    for (const auto& [key, value] : j.at("mapping").items())
      r.mapping.emplace_back(key, value.get<std::string>());
    r.correct_source = j.at("correct_source").get<std::string>();
    r.buggy_source = j.at("buggy_source").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

model::TrainSample to_train_sample(const DatasetRecord& record,
                                   const graph::EdgeSetConfig& cfg) {
  lang::Program buggy = lang::parse(record.buggy_source);
  lang::Program correct = lang::parse(record.correct_source);

  model::TrainSample s;
  s.buggy_graph = graph::build_graph(buggy, cfg);
  s.correct_graph = graph::build_graph(correct, cfg);
  s.ipa_id = record.ipa_id;
  s.variant = record.variant;
  s.bug_type = record.bug_type;
  s.split = record.split;
  s.mutation_config_id = record.mutation_config_id;

  std::map<std::string, std::string> name_map(record.mapping.begin(), record.mapping.end());
  for (const auto& v : buggy.variables) {
    auto it = name_map.find(v.name);
    if (it == name_map.end())
      throw dataset_error("mapping misses variable '" + v.name + "' in " + record.ipa_id);
    int label = -1;
    for (size_t c = 0; c < correct.variables.size(); ++c) {
      const auto& cv = correct.variables[c];
      if (cv.function_index == v.function_index && cv.name == it->second &&
          cv.ordinal == v.ordinal) {
        label = static_cast<int>(c);
        break;
      }
    }
    if (label < 0)
      throw dataset_error("no ground-truth counterpart for '" + v.qualified + "' in " +
                          record.ipa_id + "/" + record.variant);
    s.labels.push_back(label);
  }
  s.prepare();
  return s;
}

std::vector<model::TrainSample> to_train_samples(const std::vector<DatasetRecord>& records,
                                                 const graph::EdgeSetConfig& cfg,
                                                 const std::string& split) {
  std::vector<model::TrainSample> out;
  for (const auto& r : records) {
    if (!split.empty() && r.split != split) continue;
    out.push_back(to_train_sample(r, cfg));
  }
  return out;
}

}  // namespace varmap::dataset
