// Acceptance gate: end-to-end checks with pinned tolerances, one verdict
// line per criterion. Exits nonzero if any criterion fails.
//
// The heavyweight criteria train real models; expect roughly an hour of
// wall-clock time on two CPU cores.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "support/astgen.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "varmap/checkpoint.hpp"
#include "varmap/dataset.hpp"
#include "varmap/eval.hpp"
#include "varmap/mapping.hpp"
#include "varmap/mutate.hpp"
#include "varmap/parse.hpp"
#include "varmap/print.hpp"
#include "varmap/repair.hpp"
#include "varmap/rng.hpp"
#include "varmap/train.hpp"

using namespace varmap;
namespace fs = std::filesystem;

namespace {

constexpr const char* kCorpusDir = VARMAP_SOURCE_DIR "/corpus";
constexpr std::uint64_t kGenSeed = 7;
constexpr std::uint64_t kTrainSeed = 3;
constexpr int kHiddenDim = 64;
constexpr int kEpochs = 20;

struct Verdict {
  int id;
  std::string name;
  bool pass;
  double seconds;
  std::string detail;
};

std::vector<Verdict> verdicts;

template <class F>
void criterion(int id, const std::string& name, F&& body) {
  auto start = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  verdicts.push_back({id, name, pass, seconds, detail});
  std::printf("[%s] criterion %2d: %s (%.1fs)%s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              seconds, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Shared artifacts produced once and reused by later criteria.
struct Artifacts {
  dataset::GenerateReport gen;
  std::vector<model::TrainSample> train_split;
  std::vector<model::TrainSample> valid_split;
  std::vector<model::TrainSample> eval_split;
  model::ModelParams trained;        // all edges
  bool trained_ready = false;
  double valid_exact = 0.0;
  double valid_overlap = 0.0;
  std::map<std::string, lang::TestSuite> suites;
};

Artifacts art;

bool c1_encoder_oracle(std::string& detail) {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    graph::ProgramGraph g = oracles::random_graph(rng, 20);
    int d = 2 + rng.next_int(7);
    model::ModelParams params = model::init_params(d, 31, seed + 500);
    nn::Tensor fast = model::rgcn_encode(g, model::Side::Buggy, params);
    nn::Tensor slow = oracles::dense_encode(g, params.encoders[0], params.embedding);
    for (size_t i = 0; i < fast.data.size(); ++i)
      worst = std::max(worst, std::fabs(fast.data[i] - slow.data[i]));
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "max_dev=%.2e", worst);
  detail = buf;
  return worst < 1e-9;
}

bool c2_gradient_check(std::string& detail) {
  double worst = 0.0;
  int done = 0;
  for (std::uint64_t seed = 0; done < 10; ++seed) {
    lang::Program pa = astgen::random_program(seed);
    lang::Program pb = astgen::random_program(seed + 911);
    if (pa.variables.empty() || pb.variables.empty()) continue;
    ++done;

    model::TrainSample s;
    s.buggy_graph = graph::build_graph(pa);
    s.correct_graph = graph::build_graph(pb);
    Rng rng(seed);
    for (int i = 0; i < s.buggy_graph.num_vars(); ++i)
      s.labels.push_back(rng.next_int(s.correct_graph.num_vars()));
    s.prepare();

    model::ModelParams params = model::init_params(4, 31, seed + 13);
    model::ModelParams grads = model::zeros_like_params(params);
    model::loss_and_gradients(s, params, grads);

    auto named_p = model::named_tensors(params);
    auto named_g = model::named_tensors(grads);
    const double eps = 1e-5;
    for (size_t t = 0; t < named_p.size(); ++t) {
      nn::Tensor* tensor = named_p[t].second;
      for (size_t i = 0; i < tensor->data.size(); i += 3) {
        double saved = tensor->data[i];
        model::ModelParams scratch = model::zeros_like_params(params);
        tensor->data[i] = saved + eps;
        double up = model::loss_and_gradients(s, params, scratch);
        tensor->data[i] = saved - eps;
        double down = model::loss_and_gradients(s, params, scratch);
        tensor->data[i] = saved;
        double fd = (up - down) / (2 * eps);
        double an = named_g[t].second->data[i];
        worst = std::max(worst,
                         std::fabs(fd - an) / std::max({1e-6, std::fabs(fd), std::fabs(an)}));
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "max_rel_err=%.2e", worst);
  detail = buf;
  return worst < 1e-4;
}

bool c3_enumeration_oracle(std::string& detail) {
  Rng rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    int rows = 1 + rng.next_int(3);
    int cols = 1 + rng.next_int(3);
    model::VariableMapping base;
    base.probabilities = nn::Tensor(rows, cols);
    for (int i = 0; i < rows; ++i) {
      base.buggy_names.push_back("a" + std::to_string(i));
      base.buggy_qualified.push_back("main::a" + std::to_string(i));
      double sum = 0.0;
      for (int j = 0; j < cols; ++j) {
        base.probabilities.at(i, j) = 0.05 + rng.next_double();
        sum += base.probabilities.at(i, j);
      }
      for (int j = 0; j < cols; ++j) base.probabilities.at(i, j) /= sum;
    }
    for (int j = 0; j < cols; ++j) base.correct_names.push_back("b" + std::to_string(j));
    for (int i = 0; i < rows; ++i) {
      int best = 0;
      for (int j = 1; j < cols; ++j)
        if (base.probabilities.at(i, j) > base.probabilities.at(i, best)) best = j;
      base.assignment.push_back(best);
      base.row_prob.push_back(base.probabilities.at(i, best));
    }

    auto expected = oracles::enumerate_bruteforce(base.probabilities);
    auto stream = model::enumerate_mappings(base);
    size_t idx = 0;
    while (auto m = stream->next()) {
      if (idx >= expected.size() || m->assignment != expected[idx].assignment) {
        detail = "order mismatch at trial " + std::to_string(trial);
        return false;
      }
      ++idx;
    }
    if (idx != expected.size()) {
      detail = "stream truncated at trial " + std::to_string(trial);
      return false;
    }
  }
  return true;
}

bool c4_mutation_preservation(std::string& detail) {
  auto corpus = dataset::load_corpus(kCorpusDir);
  int mutants = 0;
  for (const auto& entry : corpus) {
    std::vector<bool> base;
    for (const auto& tc : entry.suite.cases) {
      lang::ExecutionResult r = lang::interpret(entry.program, tc.input, 1000000);
      base.push_back(r.ok() &&
                     lang::normalize_output(r.output) == lang::normalize_output(tc.expected));
    }
    for (int config = 1; config <= mutate::kNumMutationConfigs; ++config) {
      mutate::MutationResult m =
          mutate::apply_config(entry.program, mutate::MutationConfig::from_id(config), 1234);
      if (!m.applied) continue;
      ++mutants;
      for (size_t c = 0; c < entry.suite.cases.size(); ++c) {
        const auto& tc = entry.suite.cases[c];
        lang::ExecutionResult r = lang::interpret(m.program, tc.input, 1000000);
        bool pass = r.ok() &&
                    lang::normalize_output(r.output) == lang::normalize_output(tc.expected);
        if (pass != base[c]) {
          detail = entry.ipa_id + "/" + entry.variant + " config " + std::to_string(config) +
                   " case " + tc.name;
          return false;
        }
      }
    }
  }
  detail = std::to_string(mutants) + " mutants checked";
  return true;
}

bool c5_oracle_repair_closure(std::string& detail) {
  std::vector<dataset::DatasetRecord> eval_records;
  for (const auto& r : art.gen.records)
    if (r.split == "eval") eval_records.push_back(r);

  eval::RepairEvalConfig cfg;
  cfg.method = eval::RepairMethod::Oracle;
  cfg.budget_seconds = 60.0;
  cfg.step_limit = 1'000'000;
  cfg.jobs = 2;
  auto report = eval::evaluate_repair(eval_records, art.suites, nullptr, cfg);

  double wco = report.per_bug["wco"].fixed_rate();
  double vm = report.per_bug["vm"].fixed_rate();
  double me = report.per_bug["me"].fixed_rate();
  char buf[128];
  std::snprintf(buf, sizeof(buf), "wco=%.3f vm=%.3f me=%.3f (n=%d)", wco, vm, me,
                report.overall.total());
  detail = buf;
  return wco == 1.0 && vm >= 0.95 && me >= 0.90;
}

bool c6_end_to_end_learning(std::string& detail) {
  model::TrainConfig cfg;
  cfg.epochs = kEpochs;
  cfg.hidden_dim = kHiddenDim;
  cfg.seed = kTrainSeed;
  cfg.edge_mask = 31;
  cfg.log = &std::cerr;
  model::TrainResult result = model::train(art.train_split, art.valid_split, cfg);
  art.trained = std::move(result.params);
  art.trained_ready = true;

  eval::MappingEvalReport valid_report = eval::evaluate_mappings(art.trained, art.valid_split);
  eval::MappingEvalReport eval_report = eval::evaluate_mappings(art.trained, art.eval_split);
  art.valid_exact = valid_report.overall.exact_rate();
  art.valid_overlap = valid_report.overall.mean_overlap();

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "valid exact=%.4f overlap=%.4f | eval exact=%.4f overlap=%.4f",
                valid_report.overall.exact_rate(), valid_report.overall.mean_overlap(),
                eval_report.overall.exact_rate(), eval_report.overall.mean_overlap());
  detail = buf;
  return valid_report.overall.exact_rate() >= 0.90 &&
         valid_report.overall.mean_overlap() >= 0.95;
}

bool c7_repair_ranking(std::string& detail) {
  if (!art.trained_ready) {
    detail = "no trained model";
    return false;
  }
  std::vector<dataset::DatasetRecord> eval_records;
  for (const auto& r : art.gen.records)
    if (r.split == "eval") eval_records.push_back(r);

  eval::RepairEvalConfig cfg;
  cfg.budget_seconds = 2.0;
  cfg.step_limit = 1'000'000;
  cfg.jobs = 2;
  cfg.seed = 11;

  cfg.method = eval::RepairMethod::Gnn;
  auto gnn = eval::evaluate_repair(eval_records, art.suites, &art.trained, cfg);
  cfg.method = eval::RepairMethod::UniformBaseline;
  auto uniform = eval::evaluate_repair(eval_records, art.suites, nullptr, cfg);

  char buf[160];
  std::snprintf(buf, sizeof(buf), "gnn fixed=%.3f timeouts=%d | uniform fixed=%.3f timeouts=%d",
                gnn.overall.fixed_rate(), gnn.overall.timeout, uniform.overall.fixed_rate(),
                uniform.overall.timeout);
  detail = buf;
  return gnn.overall.fixed_rate() > uniform.overall.fixed_rate() &&
         uniform.overall.timeout > gnn.overall.timeout;
}

bool c8_edge_ablation(std::string& detail) {
  if (!art.trained_ready) {
    detail = "no trained model";
    return false;
  }
  // Same corpus and seed, AST child edges disabled (mask 30 = sibling,
  // write, read, chrono).
  const unsigned mask = 30;
  graph::EdgeSetConfig edges = graph::EdgeSetConfig::from_mask(mask);
  auto train_split = dataset::to_train_samples(art.gen.records, edges, "train");
  auto valid_split = dataset::to_train_samples(art.gen.records, edges, "valid");

  model::TrainConfig cfg;
  cfg.epochs = kEpochs;
  cfg.hidden_dim = kHiddenDim;
  cfg.seed = kTrainSeed;
  cfg.edge_mask = mask;
  cfg.log = &std::cerr;
  model::TrainResult ablated = model::train(train_split, valid_split, cfg);

  eval::MappingEvalReport report = eval::evaluate_mappings(ablated.params, valid_split);
  double drop = art.valid_exact - report.overall.exact_rate();
  char buf[128];
  std::snprintf(buf, sizeof(buf), "all-edges=%.4f no-ast=%.4f drop=%.1fpp", art.valid_exact,
                report.overall.exact_rate(), 100.0 * drop);
  detail = buf;
  return drop >= 0.20;
}

bool c9_determinism(std::string& detail) {
  fs::path dir = fs::temp_directory_path() / "varmap_acceptance_det";
  fs::create_directories(dir);

  // gen twice over two assignments (same flags both runs).
  auto corpus = dataset::load_corpus(kCorpusDir);
  std::vector<dataset::CorpusEntry> subset;
  for (auto& e : corpus)
    if (e.ipa_id == "ipa03" || e.ipa_id == "ipa05") subset.push_back(e);
  dataset::GenerateConfig gen_cfg;
  gen_cfg.seed = 99;
  auto gen_a = dataset::generate_dataset(subset, gen_cfg);
  auto gen_b = dataset::generate_dataset(subset, gen_cfg);
  dataset::write_jsonl((dir / "a.jsonl").string(), gen_a.records);
  dataset::write_jsonl((dir / "b.jsonl").string(), gen_b.records);
  if (slurp(dir / "a.jsonl") != slurp(dir / "b.jsonl")) {
    detail = "dataset files differ";
    return false;
  }
  if (gen_a.manifest_json != gen_b.manifest_json) {
    detail = "manifests differ";
    return false;
  }

  // train twice (reduced size, same flags both runs).
  graph::EdgeSetConfig edges;
  auto train_split = dataset::to_train_samples(gen_a.records, edges, "train");
  auto valid_split = dataset::to_train_samples(gen_a.records, edges, "valid");
  model::TrainConfig tcfg;
  tcfg.epochs = 2;
  tcfg.hidden_dim = 16;
  tcfg.seed = 5;
  for (const char* name : {"t1.ckpt", "t2.ckpt"}) {
    model::TrainResult r = model::train(train_split, valid_split, tcfg);
    model::save_checkpoint((dir / name).string(), r.params, "{}");
  }
  if (slurp(dir / "t1.ckpt") != slurp(dir / "t2.ckpt")) {
    detail = "checkpoints differ";
    return false;
  }

  // eval-map twice from the identical checkpoint.
  model::ModelParams params = model::load_checkpoint((dir / "t1.ckpt").string()).params;
  auto eval_split = dataset::to_train_samples(gen_a.records, edges, "eval");
  std::string r1 = eval::mapping_report_json(eval::evaluate_mappings(params, eval_split), "eval");
  std::string r2 = eval::mapping_report_json(eval::evaluate_mappings(params, eval_split), "eval");
  if (r1 != r2) {
    detail = "reports differ";
    return false;
  }
  fs::remove_all(dir);
  return true;
}

bool c10_smoke_pair(std::string& detail) {
  if (!art.trained_ready) {
    detail = "no trained model";
    return false;
  }
  lang::Program buggy = lang::parse(fixtures::kCountHelperUninit);
  lang::Program correct = lang::parse(fixtures::kCountForLoop);

  model::VariableMapping m = model::predict_mapping(buggy, correct, art.trained);
  auto pairs = m.name_pairs();
  bool mapping_ok = pairs.size() == 2 && pairs[0] == std::pair<std::string, std::string>{"j", "i"} &&
                    pairs[1] == std::pair<std::string, std::string>{"l", "n"};

  lang::TestSuite suite = lang::load_test_suite(std::string(kCorpusDir) + "/ipa05/tests");
  auto stream = model::enumerate_mappings(m);
  repair::RepairConfig rcfg;
  rcfg.budget_seconds = 60.0;
  repair::RepairOutcome outcome = repair::repair(buggy, correct, *stream, suite, rcfg);

  bool repaired = outcome.fixed();
  bool verified = false;
  if (repaired) {
    lang::Program fixed = lang::parse(outcome.fixed_source);
    verified = lang::run_test_suite(fixed, suite).all_passed();
  }
  std::string map_str;
  for (const auto& [from, to] : pairs) map_str += from + "->" + to + " ";
  detail = "mapping {" + map_str + "} " + (repaired ? "repaired" : "not repaired") +
           " in " + std::to_string(outcome.elapsed_seconds) + "s";
  return mapping_ok && repaired && verified && outcome.elapsed_seconds < 60.0;
}

}  // namespace

int main() {
  std::printf("acceptance suite: corpus=%s seed(gen)=%llu seed(train)=%llu d=%d epochs=%d\n",
              kCorpusDir, static_cast<unsigned long long>(kGenSeed),
              static_cast<unsigned long long>(kTrainSeed), kHiddenDim, kEpochs);

  criterion(1, "encoder matches dense brute force (<1e-9, 50 graphs)", c1_encoder_oracle);
  criterion(2, "model gradients match finite differences (<1e-4, 10 pairs)", c2_gradient_check);
  criterion(3, "mapping enumeration equals brute-force order (100 matrices)",
            c3_enumeration_oracle);

  // Datasets for the end-to-end criteria.
  {
    auto start = std::chrono::steady_clock::now();
    auto corpus = dataset::load_corpus(kCorpusDir);
    dataset::GenerateConfig cfg;
    cfg.seed = kGenSeed;
    art.gen = dataset::generate_dataset(corpus, cfg);
    for (const auto& e : corpus) art.suites[e.ipa_id] = e.suite;
    graph::EdgeSetConfig edges;
    art.train_split = dataset::to_train_samples(art.gen.records, edges, "train");
    art.valid_split = dataset::to_train_samples(art.gen.records, edges, "valid");
    art.eval_split = dataset::to_train_samples(art.gen.records, edges, "eval");
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[info] dataset: %zu pairs (train=%zu valid=%zu eval=%zu) in %.1fs\n",
                art.gen.records.size(), art.train_split.size(), art.valid_split.size(),
                art.eval_split.size(), seconds);
    std::fflush(stdout);
  }

  criterion(4, "all 31 mutation configs preserve test outcomes", c4_mutation_preservation);
  criterion(5, "oracle-mapping repair closure (wco=1.0, vm>=0.95, me>=0.90)",
            c5_oracle_repair_closure);
  criterion(6, "20-epoch training reaches exact>=0.90 overlap>=0.95 held out",
            c6_end_to_end_learning);
  criterion(7, "gnn outranks uniform baseline (fixed rate up, timeouts down)",
            c7_repair_ranking);
  criterion(8, "removing AST child edges drops exact match by >=20pp", c8_edge_ablation);
  criterion(9, "gen/train/eval-map runs are byte identical", c9_determinism);
  criterion(10, "helper/while pair maps {j->i, l->n} and gets repaired", c10_smoke_pair);

  int failed = 0;
  for (const auto& v : verdicts) failed += v.pass ? 0 : 1;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(verdicts.size()) - failed,
              verdicts.size());
  return failed == 0 ? 0 : 1;
}
