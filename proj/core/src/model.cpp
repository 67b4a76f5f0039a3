#include <cmath>
#include <map>
#include <stdexcept>

#include "varmap/model.hpp"
#include "varmap/rng.hpp"
#include "varmap/tape.hpp"

namespace varmap::model {

namespace {

nn::Tensor glorot(int rows, int cols, Rng& rng) {
  nn::Tensor t(rows, cols);
  const double bound = std::sqrt(6.0 / (rows + cols));
  for (auto& v : t.data) v = rng.uniform(-bound, bound);
  return t;
}

}  // namespace

ModelParams init_params(int hidden_dim, unsigned edge_mask, std::uint64_t seed) {
  Rng rng(seed);
  ModelParams p;
  p.hidden_dim = hidden_dim;
  p.edge_mask = edge_mask;
  p.embedding = nn::Tensor(graph::vocab_size(), hidden_dim);
  for (auto& v : p.embedding.data) v = rng.normal();
  for (auto& encoder : p.encoders) {
    encoder.resize(kMessagePassingSteps);
    for (auto& step : encoder) {
      step.w_root = glorot(hidden_dim, hidden_dim, rng);
      for (auto& w : step.w_rel) w = glorot(hidden_dim, hidden_dim, rng);
      step.ln_gain = nn::Tensor(1, hidden_dim);
      step.ln_gain.fill(1.0);
      step.ln_bias = nn::Tensor(1, hidden_dim);
    }
  }
  return p;
}

ModelParams zeros_like_params(const ModelParams& p) {
  ModelParams z;
  z.hidden_dim = p.hidden_dim;
  z.edge_mask = p.edge_mask;
  z.embedding = nn::zeros_like(p.embedding);
  for (size_t e = 0; e < 2; ++e) {
    z.encoders[e].resize(p.encoders[e].size());
    for (size_t s = 0; s < p.encoders[e].size(); ++s) {
      const EncoderStep& src = p.encoders[e][s];
      EncoderStep& dst = z.encoders[e][s];
      dst.w_root = nn::zeros_like(src.w_root);
      for (size_t r = 0; r < src.w_rel.size(); ++r) dst.w_rel[r] = nn::zeros_like(src.w_rel[r]);
      dst.ln_gain = nn::zeros_like(src.ln_gain);
      dst.ln_bias = nn::zeros_like(src.ln_bias);
    }
  }
  return z;
}

template <class Params, class TensorPtr>
static std::vector<std::pair<std::string, TensorPtr>> named_tensors_impl(Params& p) {
  std::vector<std::pair<std::string, TensorPtr>> out;
  out.emplace_back("embedding", &p.embedding);
  for (size_t e = 0; e < 2; ++e) {
    std::string side = e == 0 ? "buggy" : "correct";
    for (size_t s = 0; s < p.encoders[e].size(); ++s) {
      std::string prefix = side + ".step" + std::to_string(s) + ".";
      auto& step = p.encoders[e][s];
      out.emplace_back(prefix + "w_root", &step.w_root);
      for (size_t r = 0; r < step.w_rel.size(); ++r)
        out.emplace_back(prefix + "w_rel" + std::to_string(r), &step.w_rel[r]);
      out.emplace_back(prefix + "ln_gain", &step.ln_gain);
      out.emplace_back(prefix + "ln_bias", &step.ln_bias);
    }
  }
  return out;
}

std::vector<std::pair<std::string, nn::Tensor*>> named_tensors(ModelParams& p) {
  return named_tensors_impl<ModelParams, nn::Tensor*>(p);
}

std::vector<std::pair<std::string, const nn::Tensor*>> named_tensors(const ModelParams& p) {
  return named_tensors_impl<const ModelParams, const nn::Tensor*>(p);
}

nn::Tensor rgcn_encode(const graph::ProgramGraph& g, Side side, const ModelParams& params) {
  for (auto kind : g.node_kinds)
    if (kind < 0 || kind >= params.embedding.rows)
      throw vocab_mismatch_error("node kind outside the checkpoint vocabulary");

  nn::RelAdjacency adj = nn::RelAdjacency::from_graph(g);
  nn::Tensor x(g.num_nodes(), params.hidden_dim);
  for (int i = 0; i < g.num_nodes(); ++i) {
    const double* src = params.embedding.row(g.node_kinds[static_cast<size_t>(i)]);
    double* dst = x.row(i);
    for (int j = 0; j < params.hidden_dim; ++j) dst[j] = src[j];
  }

  const auto& encoder = params.encoders[static_cast<size_t>(side)];
  for (const auto& step : encoder) {
    std::array<const nn::Tensor*, graph::kNumRelations> w{};
    for (int r = 0; r < graph::kNumRelations; ++r) w[static_cast<size_t>(r)] = &step.w_rel[static_cast<size_t>(r)];
    nn::Tensor pre = nn::rgcn_layer_forward(x, step.w_root, w, adj);
    nn::Tensor normed = nn::layer_norm_rows_forward(pre, step.ln_gain, step.ln_bias, kLayerNormEps);
    x = nn::relu_forward(normed);
  }
  return x;
}

nn::Tensor var_vectors(const nn::Tensor& node_vecs, const graph::ProgramGraph& g) {
  nn::Tensor out(g.num_vars(), node_vecs.cols);
  for (int i = 0; i < g.num_vars(); ++i) {
    const double* src = node_vecs.row(g.var_nodes[static_cast<size_t>(i)]);
    double* dst = out.row(i);
    for (int j = 0; j < node_vecs.cols; ++j) dst[j] = src[j];
  }
  return out;
}

std::pair<nn::Tensor, nn::Tensor> score_mapping(const nn::Tensor& buggy_vecs,
                                                const nn::Tensor& correct_vecs) {
  nn::Tensor s = nn::matmul_bt(buggy_vecs, correct_vecs);
  nn::Tensor p = nn::softmax_rows_forward(s);
  return {std::move(s), std::move(p)};
}

lang::RenameMap VariableMapping::name_map() const {
  lang::RenameMap m;
  for (const auto& [from, to] : name_pairs()) m.pairs.emplace_back(from, to);
  return m;
}

std::vector<std::pair<std::string, std::string>> VariableMapping::name_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  std::map<std::string, std::pair<double, std::string>> best;  // name -> (prob, target)
  std::vector<std::string> order;
  for (size_t i = 0; i < assignment.size(); ++i) {
    const std::string& from = buggy_names[i];
    double prob = i < row_prob.size() ? row_prob[i] : 1.0;
    const std::string& to = correct_names[static_cast<size_t>(assignment[i])];
    auto it = best.find(from);
    if (it == best.end()) {
      best.emplace(from, std::make_pair(prob, to));
      order.push_back(from);
    } else if (prob > it->second.first) {
      it->second = {prob, to};
    }
  }
  for (const auto& name : order) out.emplace_back(name, best.at(name).second);
  return out;
}

VariableMapping predict_from_graphs(const graph::ProgramGraph& buggy_graph,
                                    const graph::ProgramGraph& correct_graph,
                                    const ModelParams& params) {
  VariableMapping m;
  m.buggy_names = buggy_graph.var_names;
  m.buggy_qualified = buggy_graph.var_qualified;
  m.correct_names = correct_graph.var_names;
  if (buggy_graph.num_vars() == 0 || correct_graph.num_vars() == 0) {
    m.empty_flagged = true;
    return m;
  }

  nn::Tensor buggy_vecs =
      var_vectors(rgcn_encode(buggy_graph, Side::Buggy, params), buggy_graph);
  nn::Tensor correct_vecs =
      var_vectors(rgcn_encode(correct_graph, Side::Correct, params), correct_graph);
  auto [s, p] = score_mapping(buggy_vecs, correct_vecs);

  for (int i = 0; i < p.rows; ++i) {
    int best = 0;
    for (int j = 1; j < p.cols; ++j)
      if (p.at(i, j) > p.at(i, best)) best = j;  // ties keep the lower index
    m.assignment.push_back(best);
    m.row_prob.push_back(p.at(i, best));
    m.log_prob += std::log(std::max(p.at(i, best), 1e-300));
  }
  m.scores = std::move(s);
  m.probabilities = std::move(p);
  return m;
}

VariableMapping predict_mapping(const lang::Program& buggy, const lang::Program& correct,
                                const ModelParams& params) {
  graph::EdgeSetConfig cfg = graph::EdgeSetConfig::from_mask(params.edge_mask);
  return predict_from_graphs(graph::build_graph(buggy, cfg), graph::build_graph(correct, cfg),
                             params);
}

VariableMapping mapping_from_assignment(const graph::ProgramGraph& buggy_graph,
                                        const graph::ProgramGraph& correct_graph,
                                        std::vector<int> assignment) {
  VariableMapping m;
  m.buggy_names = buggy_graph.var_names;
  m.buggy_qualified = buggy_graph.var_qualified;
  m.correct_names = correct_graph.var_names;
  m.assignment = std::move(assignment);
  m.row_prob.assign(m.assignment.size(), 1.0);
  m.empty_flagged = m.assignment.empty();
  return m;
}

}  // namespace varmap::model
