#pragma once

// Reverse-mode differentiation over a fixed op set. Ops append nodes to the
// tape; backward() sweeps the tape once in reverse and accumulates parameter
// gradients into the sinks registered with leaf(). One tape serves one
// forward/backward pass and is not thread-safe.

#include <array>
#include <functional>
#include <vector>

#include "varmap/graph.hpp"
#include "varmap/tensor.hpp"

namespace varmap::nn {

// Per-relation edge lists with mean normalization weights, prepared once per
// graph. inv_indeg[r][i] = 1/|N_r(i)| (0 when the relation has no in-edges
// at node i).
struct RelAdjacency {
  int num_nodes = 0;
  std::array<std::vector<std::pair<int, int>>, graph::kNumRelations> edges;  // (src, dst)
  std::array<std::vector<double>, graph::kNumRelations> inv_indeg;

  static RelAdjacency from_graph(const graph::ProgramGraph& g);
};

// out[i] = root_w^T-free form: out = x * w_root + sum_r (A_r x) * w_r, where
// A_r averages in-neighbors under relation r. Weight tensors are stored as
// (d_in x d_out).
Tensor rgcn_layer_forward(const Tensor& x, const Tensor& w_root,
                          const std::array<const Tensor*, graph::kNumRelations>& w_rel,
                          const RelAdjacency& adj);

Tensor layer_norm_rows_forward(const Tensor& x, const Tensor& gain, const Tensor& bias,
                               double eps);
Tensor relu_forward(const Tensor& x);
Tensor softmax_rows_forward(const Tensor& s);
double cross_entropy_mean_forward(const Tensor& p, const std::vector<int>& labels);

class Tape {
 public:
  using ValueId = int;

  // Parameter leaf; backward() accumulates into *grad_sink (not zeroed here).
  ValueId leaf(const Tensor& value, Tensor* grad_sink);
  // Input with no gradient.
  ValueId constant(Tensor value);

  ValueId embed_gather(ValueId table, std::vector<int> row_indices);
  ValueId rgcn_layer(ValueId x, ValueId w_root,
                     std::array<ValueId, graph::kNumRelations> w_rel,
                     const RelAdjacency* adj);
  ValueId layer_norm_rows(ValueId x, ValueId gain, ValueId bias, double eps = 1e-5);
  ValueId relu(ValueId x);
  ValueId add(ValueId a, ValueId b);
  ValueId scale(ValueId a, double factor);
  ValueId matmul(ValueId a, ValueId b);
  ValueId matmul_bt(ValueId a, ValueId b);  // a * b^T
  ValueId rows_select(ValueId x, std::vector<int> rows);
  ValueId softmax_rows(ValueId s);
  // Consumes the row-stochastic matrix P; mean over rows of -log P[i, label_i].
  ValueId cross_entropy_mean(ValueId p, std::vector<int> labels);

  const Tensor& value(ValueId id) const { return nodes_[static_cast<size_t>(id)].value; }
  double scalar(ValueId id) const { return value(id).data[0]; }

  // Seeds d(loss) = 1 and sweeps the tape once. Gradients reach only the
  // leaves the loss actually depends on; other sinks are left untouched.
  void backward(ValueId loss);

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    Tensor* sink = nullptr;  // leaf gradient accumulator
    std::function<void(Tape&, Node&)> pull;
    bool needs_grad = false;
  };

  ValueId push(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<ValueId>(nodes_.size()) - 1;
  }

  Node& node(ValueId id) { return nodes_[static_cast<size_t>(id)]; }

  Tensor& grad_of(ValueId id);

  std::vector<Node> nodes_;
};

}  // namespace varmap::nn
