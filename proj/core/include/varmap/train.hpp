#pragma once

// Training loop: batch size 1, seeded shuffling each epoch, Adam updates,
// per-epoch mean loss and validation exact-match logging.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "varmap/model.hpp"
#include "varmap/optim.hpp"
#include "varmap/tape.hpp"

namespace varmap::model {

struct TrainConfig {
  int epochs = 20;
  int hidden_dim = 64;
  std::uint64_t seed = 0;
  unsigned edge_mask = 31;
  nn::AdamConfig adam;
  std::ostream* log = nullptr;
};

struct TrainSample {
  graph::ProgramGraph buggy_graph;
  graph::ProgramGraph correct_graph;
  nn::RelAdjacency buggy_adj;
  nn::RelAdjacency correct_adj;
  std::vector<int> labels;  // per buggy variable: correct variable index

  std::string ipa_id;
  std::string variant;
  std::string bug_type;
  std::string split;
  int mutation_config_id = 0;

  void prepare() {
    buggy_adj = nn::RelAdjacency::from_graph(buggy_graph);
    correct_adj = nn::RelAdjacency::from_graph(correct_graph);
  }
};

struct EpochStats {
  double mean_loss = 0.0;
  double valid_exact = 0.0;
};

struct TrainResult {
  ModelParams params;
  std::vector<EpochStats> history;
};

// Forward + backward for one pair; zeroes `grads` first and returns the loss.
double loss_and_gradients(const TrainSample& sample, const ModelParams& params,
                          ModelParams& grads);

double exact_match_rate(const std::vector<TrainSample>& split, const ModelParams& params);

TrainResult train(const std::vector<TrainSample>& train_split,
                  const std::vector<TrainSample>& valid_split, const TrainConfig& cfg);

}  // namespace varmap::model
