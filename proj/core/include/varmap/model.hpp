#pragma once

// The variable-mapping model: a shared node-kind embedding and two relational
// message-passing encoders (one per program side). Variable pairs are scored
// with dot products and row-softmaxed into a probability matrix.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "varmap/graph.hpp"
#include "varmap/rename.hpp"
#include "varmap/tensor.hpp"

namespace varmap::model {

inline constexpr int kMessagePassingSteps = 5;
inline constexpr double kLayerNormEps = 1e-5;

enum class Side { Buggy = 0, Correct = 1 };

struct EncoderStep {
  nn::Tensor w_root;                                    // d x d
  std::array<nn::Tensor, graph::kNumRelations> w_rel;   // d x d each
  nn::Tensor ln_gain;                                   // 1 x d
  nn::Tensor ln_bias;                                   // 1 x d
};

struct ModelParams {
  int hidden_dim = 0;
  unsigned edge_mask = 31;
  nn::Tensor embedding;  // vocab x d
  std::array<std::vector<EncoderStep>, 2> encoders;
};

ModelParams init_params(int hidden_dim, unsigned edge_mask, std::uint64_t seed);
ModelParams zeros_like_params(const ModelParams& p);

// Fixed traversal order shared by the optimizer and the checkpoint format.
std::vector<std::pair<std::string, nn::Tensor*>> named_tensors(ModelParams& p);
std::vector<std::pair<std::string, const nn::Tensor*>> named_tensors(const ModelParams& p);

struct vocab_mismatch_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Five message-passing steps, each LayerNorm + ReLU; returns one vector per
// node. Inference path, no gradients.
nn::Tensor rgcn_encode(const graph::ProgramGraph& g, Side side, const ModelParams& params);

// Rows of `node_vecs` for the graph's variable nodes, in variable order.
nn::Tensor var_vectors(const nn::Tensor& node_vecs, const graph::ProgramGraph& g);

// S[i][j] = dot(a_i, b_j); P = row-softmax(S).
std::pair<nn::Tensor, nn::Tensor> score_mapping(const nn::Tensor& buggy_vecs,
                                                const nn::Tensor& correct_vecs);

// One choice of correct-side variable per buggy-side variable, with the
// probability matrix it came from and the name-level view used for renames.
struct VariableMapping {
  std::vector<std::string> buggy_names;      // plain name per buggy variable
  std::vector<std::string> buggy_qualified;
  std::vector<std::string> correct_names;    // plain name per correct variable
  std::vector<int> assignment;               // size |A|, values into correct vars
  std::vector<double> row_prob;              // chosen-entry probability per row
  nn::Tensor scores;                         // S, empty when not model-derived
  nn::Tensor probabilities;                  // P, empty when not model-derived
  double log_prob = 0.0;
  bool empty_flagged = false;                // no variables on one side

  size_t size() const { return assignment.size(); }

  // Collapses per-declaration pairs to one target per distinct buggy name.
  // Conflicts resolve toward the row with the higher chosen probability,
  // ties toward the earlier declaration.
  lang::RenameMap name_map() const;
  std::vector<std::pair<std::string, std::string>> name_pairs() const;
};

VariableMapping predict_from_graphs(const graph::ProgramGraph& buggy_graph,
                                    const graph::ProgramGraph& correct_graph,
                                    const ModelParams& params);

VariableMapping predict_mapping(const lang::Program& buggy, const lang::Program& correct,
                                const ModelParams& params);

// Ground-truth style mapping: assignment given directly, no probabilities.
VariableMapping mapping_from_assignment(const graph::ProgramGraph& buggy_graph,
                                        const graph::ProgramGraph& correct_graph,
                                        std::vector<int> assignment);

}  // namespace varmap::model
