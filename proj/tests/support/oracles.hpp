#pragma once

// Independent reference implementations used to cross-check the library:
// a dense-adjacency message-passing encoder and exhaustive assignment
// enumeration. Deliberately written with plain loops and none of the
// library's tensor kernels beyond the Tensor container itself.

#include <algorithm>
#include <cmath>
#include <vector>

#include "varmap/graph.hpp"
#include "varmap/model.hpp"
#include "varmap/rng.hpp"
#include "varmap/tensor.hpp"

namespace oracles {

using varmap::Rng;
using varmap::graph::ProgramGraph;
using varmap::model::EncoderStep;
using varmap::nn::Tensor;

// Random typed graph: arbitrary kinds within the vocabulary, arbitrary
// directed edges over the eight relations (duplicates allowed).
inline ProgramGraph random_graph(Rng& rng, int max_nodes) {
  ProgramGraph g;
  int n = 1 + rng.next_int(max_nodes);
  for (int i = 0; i < n; ++i)
    g.node_kinds.push_back(rng.next_int(varmap::graph::vocab_size()));
  int edges = rng.next_int(3 * n + 1);
  for (int e = 0; e < edges; ++e)
    g.edges.push_back({static_cast<std::int32_t>(rng.next_int(n)),
                       static_cast<std::int32_t>(rng.next_int(n)),
                       static_cast<std::int32_t>(rng.next_int(varmap::graph::kNumRelations))});
  return g;
}

// x'_i = W_root^T x_i + sum_r (1/|N_r(i)|) sum_{j in N_r(i)} W_r^T x_j, with
// weights stored input-major, followed by layer norm and relu. Dense N x N
// adjacency per relation.
inline Tensor dense_encode(const ProgramGraph& g, const std::vector<EncoderStep>& steps,
                           const Tensor& embedding) {
  const int n = g.num_nodes();
  const int d = embedding.cols;

  std::vector<std::vector<std::vector<double>>> adj(
      varmap::graph::kNumRelations,
      std::vector<std::vector<double>>(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(n), 0.0)));
  std::vector<std::vector<int>> indeg(varmap::graph::kNumRelations,
                                      std::vector<int>(static_cast<size_t>(n), 0));
  for (const auto& e : g.edges) {
    adj[static_cast<size_t>(e.relation)][static_cast<size_t>(e.dst)][static_cast<size_t>(e.src)] += 1.0;
    indeg[static_cast<size_t>(e.relation)][static_cast<size_t>(e.dst)]++;
  }
  for (int r = 0; r < varmap::graph::kNumRelations; ++r)
    for (int i = 0; i < n; ++i)
      if (indeg[static_cast<size_t>(r)][static_cast<size_t>(i)] > 0)
        for (int j = 0; j < n; ++j)
          adj[static_cast<size_t>(r)][static_cast<size_t>(i)][static_cast<size_t>(j)] /=
              indeg[static_cast<size_t>(r)][static_cast<size_t>(i)];

  Tensor x(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j)
      x.at(i, j) = embedding.at(g.node_kinds[static_cast<size_t>(i)], j);

  for (const auto& step : steps) {
    Tensor next(n, d);
    for (int i = 0; i < n; ++i) {
      for (int out = 0; out < d; ++out) {
        double acc = 0.0;
        for (int in = 0; in < d; ++in) acc += x.at(i, in) * step.w_root.at(in, out);
        next.at(i, out) = acc;
      }
      for (int r = 0; r < varmap::graph::kNumRelations; ++r) {
        for (int j = 0; j < n; ++j) {
          double w = adj[static_cast<size_t>(r)][static_cast<size_t>(i)][static_cast<size_t>(j)];
          if (w == 0.0) continue;
          for (int out = 0; out < d; ++out) {
            double acc = 0.0;
            for (int in = 0; in < d; ++in)
              acc += x.at(j, in) * step.w_rel[static_cast<size_t>(r)].at(in, out);
            next.at(i, out) += w * acc;
          }
        }
      }
    }
    // layer norm + relu
    for (int i = 0; i < n; ++i) {
      double mean = 0.0;
      for (int j = 0; j < d; ++j) mean += next.at(i, j);
      mean /= d;
      double var = 0.0;
      for (int j = 0; j < d; ++j) var += (next.at(i, j) - mean) * (next.at(i, j) - mean);
      var /= d;
      double inv = 1.0 / std::sqrt(var + varmap::model::kLayerNormEps);
      for (int j = 0; j < d; ++j) {
        double v = step.ln_gain.data[static_cast<size_t>(j)] * (next.at(i, j) - mean) * inv +
                   step.ln_bias.data[static_cast<size_t>(j)];
        next.at(i, j) = v > 0.0 ? v : 0.0;
      }
    }
    x = next;
  }
  return x;
}

struct RankedAssignment {
  std::vector<int> assignment;
  std::vector<int> ranks;
  double log_prob = 0.0;
};

// Every assignment, sorted by descending joint probability; ties by the
// lexicographically smallest vector of per-row ranks (rank = position of the
// chosen column in the row's descending-probability order, lower column
// index first among equal probabilities).
inline std::vector<RankedAssignment> enumerate_bruteforce(const Tensor& p) {
  const int rows = p.rows;
  const int cols = p.cols;
  std::vector<std::vector<int>> order(static_cast<size_t>(rows));
  for (int i = 0; i < rows; ++i) {
    auto& ord = order[static_cast<size_t>(i)];
    for (int j = 0; j < cols; ++j) ord.push_back(j);
    std::stable_sort(ord.begin(), ord.end(),
                     [&p, i](int a, int b) { return p.at(i, a) > p.at(i, b); });
  }

  std::vector<RankedAssignment> all;
  std::vector<int> ranks(static_cast<size_t>(rows), 0);
  for (;;) {
    RankedAssignment ra;
    ra.ranks = ranks;
    for (int i = 0; i < rows; ++i) {
      int col = order[static_cast<size_t>(i)][static_cast<size_t>(ranks[static_cast<size_t>(i)])];
      ra.assignment.push_back(col);
      ra.log_prob += std::log(std::max(p.at(i, col), 1e-300));
    }
    all.push_back(std::move(ra));
    int i = rows - 1;
    while (i >= 0 && ranks[static_cast<size_t>(i)] == cols - 1) {
      ranks[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ranks[static_cast<size_t>(i)]++;
  }

  std::stable_sort(all.begin(), all.end(), [](const RankedAssignment& a, const RankedAssignment& b) {
    if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
    return a.ranks < b.ranks;
  });
  return all;
}

}  // namespace oracles
