#include <cassert>
#include <cmath>
#include <stdexcept>

#include "varmap/tape.hpp"

namespace varmap::nn {

namespace {

constexpr double kLogFloor = 1e-300;

// agg[dst] += x[src] / indeg(dst), per relation.
Tensor aggregate(const Tensor& x, const std::vector<std::pair<int, int>>& edges,
                 const std::vector<double>& inv_indeg) {
  Tensor out(x.rows, x.cols);
  for (const auto& [src, dst] : edges) {
    const double w = inv_indeg[static_cast<size_t>(dst)];
    const double* xr = x.row(src);
    double* or_ = out.row(dst);
    for (int j = 0; j < x.cols; ++j) or_[j] += w * xr[j];
  }
  return out;
}

// Reverse of aggregate: dx[src] += dout[dst] / indeg(dst).
void aggregate_back(Tensor& dx, const Tensor& dout,
                    const std::vector<std::pair<int, int>>& edges,
                    const std::vector<double>& inv_indeg) {
  for (const auto& [src, dst] : edges) {
    const double w = inv_indeg[static_cast<size_t>(dst)];
    const double* dr = dout.row(dst);
    double* xr = dx.row(src);
    for (int j = 0; j < dx.cols; ++j) xr[j] += w * dr[j];
  }
}

}  // namespace

RelAdjacency RelAdjacency::from_graph(const graph::ProgramGraph& g) {
  RelAdjacency adj;
  adj.num_nodes = g.num_nodes();
  std::array<std::vector<int>, graph::kNumRelations> indeg;
  for (auto& v : indeg) v.assign(static_cast<size_t>(adj.num_nodes), 0);
  for (const auto& e : g.edges) {
    adj.edges[static_cast<size_t>(e.relation)].emplace_back(e.src, e.dst);
    indeg[static_cast<size_t>(e.relation)][static_cast<size_t>(e.dst)]++;
  }
  for (int r = 0; r < graph::kNumRelations; ++r) {
    adj.inv_indeg[static_cast<size_t>(r)].assign(static_cast<size_t>(adj.num_nodes), 0.0);
    for (int i = 0; i < adj.num_nodes; ++i) {
      int d = indeg[static_cast<size_t>(r)][static_cast<size_t>(i)];
      if (d > 0) adj.inv_indeg[static_cast<size_t>(r)][static_cast<size_t>(i)] = 1.0 / d;
    }
  }
  return adj;
}

Tensor rgcn_layer_forward(const Tensor& x, const Tensor& w_root,
                          const std::array<const Tensor*, graph::kNumRelations>& w_rel,
                          const RelAdjacency& adj) {
  Tensor out = matmul(x, w_root);
  for (int r = 0; r < graph::kNumRelations; ++r) {
    const auto& edges = adj.edges[static_cast<size_t>(r)];
    if (edges.empty()) continue;
    Tensor agg = aggregate(x, edges, adj.inv_indeg[static_cast<size_t>(r)]);
    matmul_accum(out, agg, *w_rel[static_cast<size_t>(r)]);
  }
  return out;
}

Tensor layer_norm_rows_forward(const Tensor& x, const Tensor& gain, const Tensor& bias,
                               double eps) {
  const int d = x.cols;
  Tensor out(x.rows, d);
  for (int i = 0; i < x.rows; ++i) {
    const double* xr = x.row(i);
    double mean = 0.0;
    for (int j = 0; j < d; ++j) mean += xr[j];
    mean /= d;
    double var = 0.0;
    for (int j = 0; j < d; ++j) var += (xr[j] - mean) * (xr[j] - mean);
    var /= d;
    const double inv_std = 1.0 / std::sqrt(var + eps);
    double* or_ = out.row(i);
    for (int j = 0; j < d; ++j)
      or_[j] = gain.data[static_cast<size_t>(j)] * (xr[j] - mean) * inv_std +
               bias.data[static_cast<size_t>(j)];
  }
  return out;
}

Tensor relu_forward(const Tensor& x) {
  Tensor out = x;
  for (auto& v : out.data) v = v > 0.0 ? v : 0.0;
  return out;
}

Tensor softmax_rows_forward(const Tensor& s) {
  Tensor p(s.rows, s.cols);
  for (int i = 0; i < s.rows; ++i) {
    const double* sr = s.row(i);
    double mx = sr[0];
    for (int j = 1; j < s.cols; ++j) mx = std::max(mx, sr[j]);
    double sum = 0.0;
    double* pr = p.row(i);
    for (int j = 0; j < s.cols; ++j) {
      pr[j] = std::exp(sr[j] - mx);
      sum += pr[j];
    }
    for (int j = 0; j < s.cols; ++j) pr[j] /= sum;
  }
  return p;
}

double cross_entropy_mean_forward(const Tensor& p, const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != p.rows)
    throw std::invalid_argument("cross_entropy: one label per row required");
  double loss = 0.0;
  for (int i = 0; i < p.rows; ++i) {
    int l = labels[static_cast<size_t>(i)];
    if (l < 0 || l >= p.cols) throw std::out_of_range("cross_entropy: label out of range");
    loss -= std::log(std::max(p.at(i, l), kLogFloor));
  }
  return loss / p.rows;
}

Tensor& Tape::grad_of(ValueId id) {
  Node& n = node(id);
  if (n.grad.data.empty()) n.grad = Tensor(n.value.rows, n.value.cols);
  return n.grad;
}

Tape::ValueId Tape::leaf(const Tensor& value, Tensor* grad_sink) {
  Node n;
  n.value = value;
  n.sink = grad_sink;
  n.needs_grad = grad_sink != nullptr;
  return push(std::move(n));
}

Tape::ValueId Tape::constant(Tensor value) {
  Node n;
  n.value = std::move(value);
  return push(std::move(n));
}

Tape::ValueId Tape::embed_gather(ValueId table, std::vector<int> row_indices) {
  const Tensor& t = value(table);
  Tensor out(static_cast<int>(row_indices.size()), t.cols);
  for (size_t i = 0; i < row_indices.size(); ++i) {
    const double* src = t.row(row_indices[i]);
    double* dst = out.row(static_cast<int>(i));
    for (int j = 0; j < t.cols; ++j) dst[j] = src[j];
  }
  Node n;
  n.value = std::move(out);
  n.needs_grad = node(table).needs_grad;
  if (n.needs_grad)
    n.pull = [table, rows = std::move(row_indices)](Tape& tape, Node& self) {
      Tensor& dt = tape.grad_of(table);
      for (size_t i = 0; i < rows.size(); ++i) {
        const double* g = self.grad.row(static_cast<int>(i));
        double* dst = dt.row(rows[i]);
        for (int j = 0; j < dt.cols; ++j) dst[j] += g[j];
      }
    };
  return push(std::move(n));
}

Tape::ValueId Tape::rgcn_layer(ValueId x, ValueId w_root,
                               std::array<ValueId, graph::kNumRelations> w_rel,
                               const RelAdjacency* adj) {
  const Tensor& xv = value(x);
  std::array<const Tensor*, graph::kNumRelations> weights{};
  for (int r = 0; r < graph::kNumRelations; ++r)
    weights[static_cast<size_t>(r)] = &value(w_rel[static_cast<size_t>(r)]);

  // Keep the per-relation aggregates: backward needs them for the weight
  // gradients.
  std::array<Tensor, graph::kNumRelations> aggs;
  Tensor out = nn::matmul(xv, value(w_root));
  for (int r = 0; r < graph::kNumRelations; ++r) {
    const auto& edges = adj->edges[static_cast<size_t>(r)];
    if (edges.empty()) continue;
    aggs[static_cast<size_t>(r)] =
        aggregate(xv, edges, adj->inv_indeg[static_cast<size_t>(r)]);
    matmul_accum(out, aggs[static_cast<size_t>(r)], *weights[static_cast<size_t>(r)]);
  }

  Node n;
  n.value = std::move(out);
  n.needs_grad = node(x).needs_grad || node(w_root).needs_grad;
  for (ValueId w : w_rel) n.needs_grad = n.needs_grad || node(w).needs_grad;
  n.pull = [x, w_root, w_rel, adj, aggs = std::move(aggs)](Tape& tape, Node& self) {
    const Tensor& xv = tape.value(x);
    const Tensor& dout = self.grad;
    if (tape.node(x).needs_grad) {
      Tensor& dx = tape.grad_of(x);
      matmul_bt_accum(dx, dout, tape.value(w_root));  // dout * w_root^T
      for (int r = 0; r < graph::kNumRelations; ++r) {
        const auto& edges = adj->edges[static_cast<size_t>(r)];
        if (edges.empty()) continue;
        Tensor dagg = nn::matmul_bt(dout, tape.value(w_rel[static_cast<size_t>(r)]));
        aggregate_back(dx, dagg, edges, adj->inv_indeg[static_cast<size_t>(r)]);
      }
    }
    if (tape.node(w_root).needs_grad) {
      Tensor xt = transpose(xv);
      matmul_accum(tape.grad_of(w_root), xt, dout);
    }
    for (int r = 0; r < graph::kNumRelations; ++r) {
      ValueId w = w_rel[static_cast<size_t>(r)];
      const Tensor& agg = aggs[static_cast<size_t>(r)];
      if (agg.data.empty() || !tape.node(w).needs_grad) continue;
      Tensor at = transpose(agg);
      matmul_accum(tape.grad_of(w), at, dout);
    }
  };
  return push(std::move(n));
}

Tape::ValueId Tape::layer_norm_rows(ValueId x, ValueId gain, ValueId bias, double eps) {
  const Tensor& xv = value(x);
  const Tensor& g = value(gain);
  const Tensor& b = value(bias);
  const int d = xv.cols;
  assert(static_cast<int>(g.size()) == d && static_cast<int>(b.size()) == d);

  Tensor xhat(xv.rows, d);
  std::vector<double> inv_std(static_cast<size_t>(xv.rows));
  Tensor out(xv.rows, d);
  for (int i = 0; i < xv.rows; ++i) {
    const double* xr = xv.row(i);
    double mean = 0.0;
    for (int j = 0; j < d; ++j) mean += xr[j];
    mean /= d;
    double var = 0.0;
    for (int j = 0; j < d; ++j) var += (xr[j] - mean) * (xr[j] - mean);
    var /= d;
    inv_std[static_cast<size_t>(i)] = 1.0 / std::sqrt(var + eps);
    double* hr = xhat.row(i);
    double* or_ = out.row(i);
    for (int j = 0; j < d; ++j) {
      hr[j] = (xr[j] - mean) * inv_std[static_cast<size_t>(i)];
      or_[j] = g.data[static_cast<size_t>(j)] * hr[j] + b.data[static_cast<size_t>(j)];
    }
  }

  Node n;
  n.value = std::move(out);
  n.needs_grad = node(x).needs_grad || node(gain).needs_grad || node(bias).needs_grad;
  n.pull = [x, gain, bias, xhat = std::move(xhat), inv_std = std::move(inv_std)](
               Tape& tape, Node& self) {
    const Tensor& g = tape.value(gain);
    const Tensor& dy = self.grad;
    const int d = dy.cols;
    if (tape.node(gain).needs_grad) {
      Tensor& dg = tape.grad_of(gain);
      for (int i = 0; i < dy.rows; ++i)
        for (int j = 0; j < d; ++j)
          dg.data[static_cast<size_t>(j)] += dy.at(i, j) * xhat.at(i, j);
    }
    if (tape.node(bias).needs_grad) {
      Tensor& db = tape.grad_of(bias);
      for (int i = 0; i < dy.rows; ++i)
        for (int j = 0; j < d; ++j) db.data[static_cast<size_t>(j)] += dy.at(i, j);
    }
    if (tape.node(x).needs_grad) {
      Tensor& dx = tape.grad_of(x);
      for (int i = 0; i < dy.rows; ++i) {
        // dxhat = dy * gain; dx = (dxhat - mean(dxhat) - xhat * mean(dxhat*xhat)) / std
        double mean_dh = 0.0;
        double mean_dh_h = 0.0;
        for (int j = 0; j < d; ++j) {
          double dh = dy.at(i, j) * g.data[static_cast<size_t>(j)];
          mean_dh += dh;
          mean_dh_h += dh * xhat.at(i, j);
        }
        mean_dh /= d;
        mean_dh_h /= d;
        const double is = inv_std[static_cast<size_t>(i)];
        for (int j = 0; j < d; ++j) {
          double dh = dy.at(i, j) * g.data[static_cast<size_t>(j)];
          dx.at(i, j) += (dh - mean_dh - xhat.at(i, j) * mean_dh_h) * is;
        }
      }
    }
  };
  return push(std::move(n));
}

Tape::ValueId Tape::relu(ValueId x) {
  Node n;
  n.value = relu_forward(value(x));
  n.needs_grad = node(x).needs_grad;
  if (n.needs_grad)
    n.pull = [x](Tape& tape, Node& self) {
      Tensor& dx = tape.grad_of(x);
      const Tensor& y = self.value;
      for (size_t i = 0; i < dx.data.size(); ++i)
        if (y.data[i] > 0.0) dx.data[i] += self.grad.data[i];
    };
  return push(std::move(n));
}

Tape::ValueId Tape::add(ValueId a, ValueId b) {
  const Tensor& av = value(a);
  const Tensor& bv = value(b);
  if (!av.same_shape(bv)) throw std::invalid_argument("add: shape mismatch");
  Tensor out = av;
  add_accum(out, bv);
  Node n;
  n.value = std::move(out);
  n.needs_grad = node(a).needs_grad || node(b).needs_grad;
  if (n.needs_grad)
    n.pull = [a, b](Tape& tape, Node& self) {
      if (tape.node(a).needs_grad) add_accum(tape.grad_of(a), self.grad);
      if (tape.node(b).needs_grad) add_accum(tape.grad_of(b), self.grad);
    };
  return push(std::move(n));
}

Tape::ValueId Tape::scale(ValueId a, double factor) {
  Tensor out = value(a);
  for (auto& v : out.data) v *= factor;
  Node n;
  n.value = std::move(out);
  n.needs_grad = node(a).needs_grad;
  if (n.needs_grad)
    n.pull = [a, factor](Tape& tape, Node& self) {
      axpy(tape.grad_of(a), factor, self.grad);
    };
  return push(std::move(n));
}

Tape::ValueId Tape::matmul(ValueId a, ValueId b) {
  const Tensor& av = value(a);
  const Tensor& bv = value(b);
  if (av.cols != bv.rows) throw std::invalid_argument("matmul: shape mismatch");
  Node n;
  n.value = nn::matmul(av, bv);
  n.needs_grad = node(a).needs_grad || node(b).needs_grad;
  if (n.needs_grad)
    n.pull = [a, b](Tape& tape, Node& self) {
      if (tape.node(a).needs_grad)
        matmul_bt_accum(tape.grad_of(a), self.grad, tape.value(b));
      if (tape.node(b).needs_grad) {
        Tensor at = transpose(tape.value(a));
        matmul_accum(tape.grad_of(b), at, self.grad);
      }
    };
  return push(std::move(n));
}

Tape::ValueId Tape::matmul_bt(ValueId a, ValueId b) {
  const Tensor& av = value(a);
  const Tensor& bv = value(b);
  if (av.cols != bv.cols) throw std::invalid_argument("matmul_bt: shape mismatch");
  Node n;
  n.value = nn::matmul_bt(av, bv);
  n.needs_grad = node(a).needs_grad || node(b).needs_grad;
  if (n.needs_grad)
    n.pull = [a, b](Tape& tape, Node& self) {
      if (tape.node(a).needs_grad)
        matmul_accum(tape.grad_of(a), self.grad, tape.value(b));
      if (tape.node(b).needs_grad) {
        Tensor gt = transpose(self.grad);
        matmul_accum(tape.grad_of(b), gt, tape.value(a));
      }
    };
  return push(std::move(n));
}

Tape::ValueId Tape::rows_select(ValueId x, std::vector<int> rows) {
  const Tensor& xv = value(x);
  Tensor out(static_cast<int>(rows.size()), xv.cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    const double* src = xv.row(rows[i]);
    double* dst = out.row(static_cast<int>(i));
    for (int j = 0; j < xv.cols; ++j) dst[j] = src[j];
  }
  Node n;
  n.value = std::move(out);
  n.needs_grad = node(x).needs_grad;
  if (n.needs_grad)
    n.pull = [x, rows = std::move(rows)](Tape& tape, Node& self) {
      Tensor& dx = tape.grad_of(x);
      for (size_t i = 0; i < rows.size(); ++i) {
        const double* g = self.grad.row(static_cast<int>(i));
        double* dst = dx.row(rows[i]);
        for (int j = 0; j < dx.cols; ++j) dst[j] += g[j];
      }
    };
  return push(std::move(n));
}

Tape::ValueId Tape::softmax_rows(ValueId s) {
  Node n;
  n.value = softmax_rows_forward(value(s));
  n.needs_grad = node(s).needs_grad;
  if (n.needs_grad)
    n.pull = [s](Tape& tape, Node& self) {
      const Tensor& p = self.value;
      Tensor& ds = tape.grad_of(s);
      for (int i = 0; i < p.rows; ++i) {
        double dot = 0.0;
        for (int j = 0; j < p.cols; ++j) dot += self.grad.at(i, j) * p.at(i, j);
        for (int j = 0; j < p.cols; ++j)
          ds.at(i, j) += p.at(i, j) * (self.grad.at(i, j) - dot);
      }
    };
  return push(std::move(n));
}

Tape::ValueId Tape::cross_entropy_mean(ValueId p, std::vector<int> labels) {
  Node n;
  n.value = Tensor(1, 1);
  n.value.data[0] = cross_entropy_mean_forward(value(p), labels);
  n.needs_grad = node(p).needs_grad;
  if (n.needs_grad)
    n.pull = [p, labels = std::move(labels)](Tape& tape, Node& self) {
      const Tensor& pv = tape.value(p);
      Tensor& dp = tape.grad_of(p);
      const double g = self.grad.data[0] / pv.rows;
      for (int i = 0; i < pv.rows; ++i) {
        int l = labels[static_cast<size_t>(i)];
        dp.at(i, l) -= g / std::max(pv.at(i, l), kLogFloor);
      }
    };
  return push(std::move(n));
}

void Tape::backward(ValueId loss) {
  Node& top = node(loss);
  if (!top.needs_grad) return;  // disconnected from parameters: nothing to do
  grad_of(loss).fill(1.0);
  for (int id = static_cast<int>(nodes_.size()) - 1; id >= 0; --id) {
    Node& n = nodes_[static_cast<size_t>(id)];
    if (!n.needs_grad || n.grad.data.empty()) continue;
    if (n.pull) n.pull(*this, n);
    if (n.sink) add_accum(*n.sink, n.grad);
  }
}

}  // namespace varmap::nn
