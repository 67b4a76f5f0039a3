#include <ostream>
#include <stdexcept>

#include "varmap/rng.hpp"
#include "varmap/train.hpp"

namespace varmap::model {

namespace {

struct TapedStep {
  nn::Tape::ValueId w_root;
  std::array<nn::Tape::ValueId, graph::kNumRelations> w_rel;
  nn::Tape::ValueId ln_gain;
  nn::Tape::ValueId ln_bias;
};

struct TapedModel {
  nn::Tape::ValueId embedding;
  std::array<std::vector<TapedStep>, 2> encoders;

  static TapedModel bind(nn::Tape& tape, const ModelParams& params, ModelParams& grads) {
    TapedModel tm;
    tm.embedding = tape.leaf(params.embedding, &grads.embedding);
    for (size_t e = 0; e < 2; ++e)
      for (size_t s = 0; s < params.encoders[e].size(); ++s) {
        const EncoderStep& step = params.encoders[e][s];
        EncoderStep& gstep = grads.encoders[e][s];
        TapedStep ts;
        ts.w_root = tape.leaf(step.w_root, &gstep.w_root);
        for (size_t r = 0; r < step.w_rel.size(); ++r)
          ts.w_rel[r] = tape.leaf(step.w_rel[r], &gstep.w_rel[r]);
        ts.ln_gain = tape.leaf(step.ln_gain, &gstep.ln_gain);
        ts.ln_bias = tape.leaf(step.ln_bias, &gstep.ln_bias);
        tm.encoders[e].push_back(ts);
      }
    return tm;
  }

  nn::Tape::ValueId encode(nn::Tape& tape, Side side, const graph::ProgramGraph& g,
                           const nn::RelAdjacency& adj) const {
    std::vector<int> kinds(g.node_kinds.begin(), g.node_kinds.end());
    nn::Tape::ValueId x = tape.embed_gather(embedding, std::move(kinds));
    for (const TapedStep& step : encoders[static_cast<size_t>(side)]) {
      x = tape.rgcn_layer(x, step.w_root, step.w_rel, &adj);
      x = tape.layer_norm_rows(x, step.ln_gain, step.ln_bias, kLayerNormEps);
      x = tape.relu(x);
    }
    return x;
  }
};

void zero_params(ModelParams& p) {
  for (auto& [name, t] : named_tensors(p)) t->fill(0.0);
}

}  // namespace

double loss_and_gradients(const TrainSample& sample, const ModelParams& params,
                          ModelParams& grads) {
  if (sample.buggy_graph.num_vars() == 0 || sample.correct_graph.num_vars() == 0)
    throw std::invalid_argument("training pair without variables");
  zero_params(grads);

  nn::Tape tape;
  TapedModel tm = TapedModel::bind(tape, params, grads);
  auto bx = tm.encode(tape, Side::Buggy, sample.buggy_graph, sample.buggy_adj);
  auto cx = tm.encode(tape, Side::Correct, sample.correct_graph, sample.correct_adj);
  auto bvars = tape.rows_select(
      bx, {sample.buggy_graph.var_nodes.begin(), sample.buggy_graph.var_nodes.end()});
  auto cvars = tape.rows_select(
      cx, {sample.correct_graph.var_nodes.begin(), sample.correct_graph.var_nodes.end()});
  auto scores = tape.matmul_bt(bvars, cvars);
  auto probs = tape.softmax_rows(scores);
  auto loss = tape.cross_entropy_mean(probs, sample.labels);
  tape.backward(loss);
  return tape.scalar(loss);
}

double exact_match_rate(const std::vector<TrainSample>& split, const ModelParams& params) {
  if (split.empty()) return 0.0;
  int exact = 0;
  for (const auto& s : split) {
    VariableMapping m = predict_from_graphs(s.buggy_graph, s.correct_graph, params);
    if (m.assignment == s.labels) ++exact;
  }
  return static_cast<double>(exact) / static_cast<double>(split.size());
}

TrainResult train(const std::vector<TrainSample>& train_split,
                  const std::vector<TrainSample>& valid_split, const TrainConfig& cfg) {
  if (train_split.empty()) throw std::invalid_argument("empty training set");
  if (cfg.epochs < 1) throw std::invalid_argument("epochs must be >= 1");

  TrainResult result;
  result.params = init_params(cfg.hidden_dim, cfg.edge_mask, cfg.seed);
  ModelParams grads = zeros_like_params(result.params);

  std::vector<nn::Tensor*> param_ptrs;
  std::vector<const nn::Tensor*> grad_ptrs;
  for (auto& [name, t] : named_tensors(result.params)) param_ptrs.push_back(t);
  for (auto& [name, t] : named_tensors(grads)) grad_ptrs.push_back(t);
  nn::AdamState adam = nn::AdamState::init(param_ptrs, cfg.adam);

  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<size_t> order(train_split.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    double loss_sum = 0.0;
    for (size_t idx : order) {
      loss_sum += loss_and_gradients(train_split[idx], result.params, grads);
      nn::adam_step(param_ptrs, grad_ptrs, adam);
    }
    EpochStats stats;
    stats.mean_loss = loss_sum / static_cast<double>(train_split.size());
    stats.valid_exact = exact_match_rate(valid_split, result.params);
    result.history.push_back(stats);
    if (cfg.log)
      (*cfg.log) << "epoch " << (epoch + 1) << "/" << cfg.epochs
                 << " mean_loss=" << stats.mean_loss
                 << " valid_exact=" << stats.valid_exact << "\n";
  }
  return result;
}

}  // namespace varmap::model
