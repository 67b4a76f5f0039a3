// varmap command line: dataset generation, training, variable mapping,
// repair, and evaluation over the mini-C toolchain.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "varmap/checkpoint.hpp"
#include "varmap/dataset.hpp"
#include "varmap/eval.hpp"
#include "varmap/mapping.hpp"
#include "varmap/optim.hpp"
#include "varmap/parse.hpp"
#include "varmap/print.hpp"
#include "varmap/repair.hpp"
#include "varmap/rng.hpp"
#include "varmap/train.hpp"

namespace {

using nlohmann::json;
using namespace varmap;

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

std::map<std::string, lang::TestSuite> load_suites(const std::string& corpus_dir) {
  namespace fs = std::filesystem;
  std::map<std::string, lang::TestSuite> suites;
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (!entry.is_directory()) continue;
    fs::path tests = entry.path() / "tests";
    if (fs::is_directory(tests))
      suites[entry.path().filename().string()] = lang::load_test_suite(tests.string());
  }
  if (suites.empty()) throw std::runtime_error("no test suites under " + corpus_dir);
  return suites;
}

json train_meta(const model::TrainConfig& cfg, const std::string& dataset_path,
                const model::TrainResult& result) {
  json meta;
  meta["epochs"] = cfg.epochs;
  meta["hidden_dim"] = cfg.hidden_dim;
  meta["seed"] = cfg.seed;
  meta["edge_mask"] = cfg.edge_mask;
  meta["lr"] = cfg.adam.lr;
  meta["dataset"] = dataset_path;
  if (!result.history.empty()) {
    meta["final_loss"] = result.history.back().mean_loss;
    meta["final_valid_exact"] = result.history.back().valid_exact;
  }
  return meta;
}

int cmd_gen(const std::string& corpus_dir, const std::string& out_path,
            const std::string& manifest_path, std::uint64_t seed, int per_config,
            std::uint64_t step_limit, bool rename_buggy) {
  auto corpus = dataset::load_corpus(corpus_dir);
  dataset::GenerateConfig cfg;
  cfg.seed = seed;
  cfg.per_config_samples = per_config;
  cfg.step_limit = step_limit;
  cfg.rename_buggy = rename_buggy;
  auto report = dataset::generate_dataset(corpus, cfg);
  dataset::write_jsonl(out_path, report.records);
  if (!manifest_path.empty()) spit(manifest_path, report.manifest_json + "\n");
  std::cout << "wrote " << report.records.size() << " pairs to " << out_path;
  if (!report.rejected.empty()) std::cout << " (" << report.rejected.size() << " rejected)";
  std::cout << "\n";
  return 0;
}

int cmd_train(const std::string& dataset_path, const std::string& out_path, int epochs,
              int hidden, std::uint64_t seed, double lr, unsigned edge_mask, bool quiet) {
  auto records = dataset::read_jsonl(dataset_path);
  graph::EdgeSetConfig edges = graph::EdgeSetConfig::from_mask(edge_mask);
  auto train_split = dataset::to_train_samples(records, edges, "train");
  auto valid_split = dataset::to_train_samples(records, edges, "valid");

  model::TrainConfig cfg;
  cfg.epochs = epochs;
  cfg.hidden_dim = hidden;
  cfg.seed = seed;
  cfg.adam.lr = lr;
  cfg.edge_mask = edge_mask;
  cfg.log = quiet ? nullptr : &std::cerr;
  model::TrainResult result = model::train(train_split, valid_split, cfg);
  model::save_checkpoint(out_path, result.params, train_meta(cfg, dataset_path, result).dump());
  std::cout << "checkpoint written to " << out_path << "\n";
  return 0;
}

int cmd_map(const std::string& buggy_path, const std::string& correct_path,
            const std::string& ckpt_path, const std::string& out_path) {
  auto loaded = model::load_checkpoint(ckpt_path);
  lang::Program buggy = lang::parse(slurp(buggy_path));
  lang::Program correct = lang::parse(slurp(correct_path));
  model::VariableMapping m = model::predict_mapping(buggy, correct, loaded.params);

  json out;
  json mapping = json::object();
  for (const auto& [from, to] : m.name_pairs()) mapping[from] = to;
  out["mapping"] = std::move(mapping);
  json rows = json::array();
  for (size_t i = 0; i < m.assignment.size(); ++i) {
    json row;
    row["buggy"] = m.buggy_qualified[i];
    row["correct"] = m.correct_names[static_cast<size_t>(m.assignment[i])];
    row["p"] = m.row_prob[i];
    rows.push_back(std::move(row));
  }
  out["rows"] = std::move(rows);
  out["log_prob"] = m.log_prob;
  out["empty"] = m.empty_flagged;
  std::string text = out.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    spit(out_path, text);
  return 0;
}

int cmd_repair(const std::string& buggy_path, const std::string& correct_path,
               const std::string& suite_dir, const std::string& ckpt_path, double budget,
               std::uint64_t step_limit, const std::string& out_path,
               const std::string& debug_dir) {
  auto loaded = model::load_checkpoint(ckpt_path);
  lang::Program buggy = lang::parse(slurp(buggy_path));
  lang::Program correct = lang::parse(slurp(correct_path));
  lang::TestSuite suite = lang::load_test_suite(suite_dir);

  auto stream =
      model::enumerate_mappings(model::predict_mapping(buggy, correct, loaded.params));
  repair::RepairConfig cfg;
  cfg.budget_seconds = budget;
  cfg.step_limit = step_limit;
  cfg.debug_dir = debug_dir;
  repair::RepairOutcome outcome = repair::repair(buggy, correct, *stream, suite, cfg);

  json out;
  out["status"] = repair::status_name(outcome.status);
  out["mappings_tried"] = outcome.mappings_tried;
  out["candidates_tried"] = outcome.candidates_tried;
  out["elapsed_seconds"] = outcome.elapsed_seconds;
  if (outcome.fixed()) {
    if (!out_path.empty()) {
      spit(out_path, outcome.fixed_source);
      out["fixed_path"] = out_path;
    } else {
      out["fixed_source"] = outcome.fixed_source;
    }
  }
  std::cout << out.dump(2) << "\n";
  if (outcome.fixed()) return 0;
  return outcome.status == repair::RepairOutcome::Status::Exhausted ? 2 : 3;
}

int cmd_eval_map(const std::string& dataset_path, const std::string& ckpt_path,
                 const std::string& split, const std::string& out_path) {
  auto loaded = model::load_checkpoint(ckpt_path);
  auto records = dataset::read_jsonl(dataset_path);
  auto samples = dataset::to_train_samples(
      records, graph::EdgeSetConfig::from_mask(loaded.params.edge_mask), split);
  eval::MappingEvalReport report = eval::evaluate_mappings(loaded.params, samples);
  std::string text = eval::mapping_report_json(report, split) + "\n";
  if (out_path.empty())
    std::cout << text;
  else {
    spit(out_path, text);
    std::cout << "exact=" << report.overall.exact_rate()
              << " overlap=" << report.overall.mean_overlap() << " n=" << report.overall.total
              << "\n";
  }
  return 0;
}

int cmd_eval_repair(const std::string& dataset_path, const std::string& corpus_dir,
                    const std::string& method_name, const std::string& ckpt_path,
                    const std::string& split, double budget, std::uint64_t step_limit,
                    int jobs, std::uint64_t seed, const std::string& out_path,
                    const std::string& cactus_path) {
  eval::RepairEvalConfig cfg;
  cfg.method = eval::parse_repair_method(method_name);
  cfg.budget_seconds = budget;
  cfg.step_limit = step_limit;
  cfg.jobs = jobs;
  cfg.seed = seed;

  model::ModelParams params;
  bool have_params = false;
  if (!ckpt_path.empty()) {
    params = model::load_checkpoint(ckpt_path).params;
    have_params = true;
  }
  if (cfg.method == eval::RepairMethod::Gnn && !have_params)
    throw std::runtime_error("--checkpoint is required for method gnn");

  auto all_records = dataset::read_jsonl(dataset_path);
  std::vector<dataset::DatasetRecord> records;
  for (auto& r : all_records)
    if (split.empty() || r.split == split) records.push_back(std::move(r));

  auto suites = load_suites(corpus_dir);
  eval::RepairEvalReport report =
      eval::evaluate_repair(records, suites, have_params ? &params : nullptr, cfg);

  std::string text = eval::repair_report_json(report, cfg, split) + "\n";
  if (out_path.empty())
    std::cout << text;
  else {
    spit(out_path, text);
    std::cout << "fixed=" << report.overall.fixed << "/" << report.overall.total() << "\n";
  }
  if (!cactus_path.empty()) spit(cactus_path, eval::cactus_csv(report, cfg.method));
  return 0;
}

// Compact built-in checks against independently computed expectations.
int cmd_selftest(std::uint64_t seed) {
  int failures = 0;
  auto check = [&failures](bool ok, const std::string& name) {
    std::cout << (ok ? "[pass] " : "[FAIL] ") << name << "\n";
    failures += ok ? 0 : 1;
  };

  {
    const char* src =
        "int main() {\n    int n, i;\n    scanf(\"%d\", &n);\n    for (i = 1; i <= n; i++) "
        "{\n        printf(\"%d\\n\", i);\n    }\n    return 0;\n}\n";
    lang::Program p = lang::parse(src);
    check(lang::pretty_print(lang::parse(lang::pretty_print(p))) == lang::pretty_print(p),
          "pretty print fixpoint");
    check(lang::interpret(p, "3").output == "1\n2\n3\n", "interpreter counts 1..n");
  }
  {
    // Enumeration versus exhaustive sort on a 2x2 matrix.
    model::VariableMapping base;
    base.buggy_names = {"a0", "a1"};
    base.buggy_qualified = {"main::a0", "main::a1"};
    base.correct_names = {"b0", "b1"};
    base.probabilities = nn::Tensor(2, 2);
    base.probabilities.at(0, 0) = 0.6;
    base.probabilities.at(0, 1) = 0.4;
    base.probabilities.at(1, 0) = 0.7;
    base.probabilities.at(1, 1) = 0.3;
    base.assignment = {0, 0};
    base.row_prob = {0.6, 0.7};
    auto stream = model::enumerate_mappings(base);
    std::vector<double> joints;
    while (auto m = stream->next()) joints.push_back(std::exp(m->log_prob));
    bool ok = joints.size() == 4;
    const double expect[] = {0.42, 0.28, 0.18, 0.12};
    for (size_t i = 0; ok && i < 4; ++i) ok = std::fabs(joints[i] - expect[i]) < 1e-12;
    check(ok, "mapping enumeration order");
  }
  {
    // Gradient of a tiny model against central differences.
    lang::Program a = lang::parse("int main(){ int x, y; scanf(\"%d\", &x); y = x + 1; "
                                  "printf(\"%d\\n\", y); return 0; }");
    lang::Program b = lang::parse("int main(){ int u, v; scanf(\"%d\", &u); v = u + 1; "
                                  "printf(\"%d\\n\", v); return 0; }");
    model::TrainSample s;
    s.buggy_graph = graph::build_graph(a);
    s.correct_graph = graph::build_graph(b);
    s.labels = {0, 1};
    s.prepare();
    model::ModelParams params = model::init_params(4, 31, seed);
    model::ModelParams grads = model::zeros_like_params(params);
    model::loss_and_gradients(s, params, grads);
    auto named_p = model::named_tensors(params);
    auto named_g = model::named_tensors(grads);
    double worst = 0.0;
    for (size_t t = 0; t < named_p.size(); ++t) {
      nn::Tensor* tensor = named_p[t].second;
      for (size_t i = 0; i < tensor->data.size(); i += 17) {
        double saved = tensor->data[i];
        model::ModelParams scratch = model::zeros_like_params(params);
        tensor->data[i] = saved + 1e-5;
        double up = model::loss_and_gradients(s, params, scratch);
        tensor->data[i] = saved - 1e-5;
        double down = model::loss_and_gradients(s, params, scratch);
        tensor->data[i] = saved;
        double fd = (up - down) / 2e-5;
        double an = named_g[t].second->data[i];
        worst = std::max(worst, std::fabs(fd - an) /
                                    std::max({1e-6, std::fabs(fd), std::fabs(an)}));
      }
    }
    check(worst < 1e-4, "model gradients match finite differences");
  }
  {
    nn::Tensor p(1, 1);
    nn::Tensor g(1, 1);
    g.data[0] = 1.0;
    nn::AdamState state = nn::AdamState::init({&p});
    nn::adam_step({&p}, {&g}, state);
    check(std::fabs(p.data[0] + 1e-3) < 1e-6, "first adam step magnitude");
  }
  std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable mapping and repair toolchain for mini-C programs"};
  app.require_subcommand(1);

  // gen
  std::string corpus_dir, out_path, manifest_path;
  std::uint64_t seed = 0;
  int per_config = 1;
  std::uint64_t gen_step_limit = 1'000'000;
  bool rename_buggy = false;
  auto* gen = app.add_subcommand("gen", "generate a mutation/bug dataset from a corpus");
  gen->add_option("--corpus", corpus_dir, "corpus directory")->required();
  gen->add_option("--out", out_path, "output JSONL path")->required();
  gen->add_option("--manifest", manifest_path, "manifest JSON path");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--per-config-samples", per_config, "mutants per configuration");
  gen->add_option("--step-limit", gen_step_limit, "interpreter step limit");
  gen->add_flag("--rename-buggy", rename_buggy, "randomly rename buggy-side variables");

  // train
  std::string dataset_path, ckpt_out;
  int epochs = 20;
  int hidden = 64;
  double lr = 1e-3;
  unsigned edge_mask = 31;
  bool quiet = false;
  auto* train = app.add_subcommand("train", "train the mapping model on a dataset");
  train->add_option("--dataset", dataset_path, "dataset JSONL")->required();
  train->add_option("--out", ckpt_out, "checkpoint output path")->required();
  train->add_option("--epochs", epochs, "training epochs");
  train->add_option("--hidden", hidden, "hidden dimension");
  train->add_option("--seed", seed, "random seed");
  train->add_option("--lr", lr, "Adam learning rate");
  train->add_option("--edges", edge_mask, "edge family mask (1 ast, 2 sibling, 4 write, 8 read, 16 chrono)");
  train->add_flag("--quiet", quiet, "suppress per-epoch logging");

  // map
  std::string buggy_path, correct_path, ckpt_path, map_out;
  auto* map_cmd = app.add_subcommand("map", "predict the variable mapping between two programs");
  map_cmd->add_option("--buggy", buggy_path, "buggy source file")->required();
  map_cmd->add_option("--correct", correct_path, "correct source file")->required();
  map_cmd->add_option("--checkpoint", ckpt_path, "model checkpoint")->required();
  map_cmd->add_option("--out", map_out, "write mapping JSON here instead of stdout");

  // repair
  std::string suite_dir, repair_out, debug_dir;
  double budget = 60.0;
  std::uint64_t step_limit = lang::kDefaultStepLimit;
  auto* rep = app.add_subcommand("repair", "repair a buggy program using a correct one");
  rep->add_option("--buggy", buggy_path, "buggy source file")->required();
  rep->add_option("--correct", correct_path, "correct source file")->required();
  rep->add_option("--suite", suite_dir, "test suite directory (NN.in / NN.out)")->required();
  rep->add_option("--checkpoint", ckpt_path, "model checkpoint")->required();
  rep->add_option("--budget", budget, "wall clock budget in seconds");
  rep->add_option("--step-limit", step_limit, "interpreter step limit per test");
  rep->add_option("--out", repair_out, "write the fixed source here");
  rep->add_option("--debug-dir", debug_dir, "dump tried candidates to this directory");

  // eval-map
  std::string split = "eval";
  auto* emap = app.add_subcommand("eval-map", "mapping quality metrics over a dataset split");
  emap->add_option("--dataset", dataset_path, "dataset JSONL")->required();
  emap->add_option("--checkpoint", ckpt_path, "model checkpoint")->required();
  emap->add_option("--split", split, "train | valid | eval (empty for all)");
  emap->add_option("--out", out_path, "report JSON path");

  // eval-repair
  std::string method = "gnn", cactus_path;
  int jobs = 1;
  auto* erep = app.add_subcommand("eval-repair", "repair benchmark over a dataset split");
  erep->add_option("--dataset", dataset_path, "dataset JSONL")->required();
  erep->add_option("--corpus", corpus_dir, "corpus directory (for test suites)")->required();
  erep->add_option("--method", method, "gnn | uniform-baseline | oracle");
  erep->add_option("--checkpoint", ckpt_path, "model checkpoint (gnn)");
  erep->add_option("--split", split, "dataset split");
  erep->add_option("--budget", budget, "per-program budget in seconds");
  erep->add_option("--step-limit", step_limit, "interpreter step limit per test");
  erep->add_option("--jobs", jobs, "parallel workers");
  erep->add_option("--seed", seed, "baseline stream seed");
  erep->add_option("--out", out_path, "report JSON path");
  erep->add_option("--cactus", cactus_path, "cactus CSV path");

  // selftest
  auto* self = app.add_subcommand("selftest", "run built-in oracle and property checks");
  self->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
    if (gen->parsed())
      return cmd_gen(corpus_dir, out_path, manifest_path, seed, per_config, gen_step_limit,
                     rename_buggy);
    if (train->parsed())
      return cmd_train(dataset_path, ckpt_out, epochs, hidden, seed, lr, edge_mask, quiet);
    if (map_cmd->parsed()) return cmd_map(buggy_path, correct_path, ckpt_path, map_out);
    if (rep->parsed())
      return cmd_repair(buggy_path, correct_path, suite_dir, ckpt_path, budget, step_limit,
                        repair_out, debug_dir);
    if (emap->parsed()) return cmd_eval_map(dataset_path, ckpt_path, split, out_path);
    if (erep->parsed())
      return cmd_eval_repair(dataset_path, corpus_dir, method, ckpt_path, split, budget,
                             step_limit, jobs, seed, out_path, cactus_path);
    if (self->parsed()) return cmd_selftest(seed);
    return 1;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    nlohmann::json err;
    err["error"] = {{"kind", "usage"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 64;
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = {{"kind", "runtime"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
