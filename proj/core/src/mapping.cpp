#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "varmap/mapping.hpp"
#include "varmap/rng.hpp"

namespace varmap::model {

namespace {

class EnumerationStream : public MappingStream {
 public:
  explicit EnumerationStream(VariableMapping base) : base_(std::move(base)) {
    // Degenerate inputs (no variables, or no probability matrix to expand)
    // yield the base mapping once.
    if (base_.empty_flagged || base_.probabilities.data.empty()) {
      single_left_ = true;
      return;
    }
    const nn::Tensor& p = base_.probabilities;
    rows_ = p.rows;
    cols_ = p.cols;
    order_.resize(static_cast<size_t>(rows_));
    logp_.resize(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
      auto& ord = order_[static_cast<size_t>(i)];
      ord.resize(static_cast<size_t>(cols_));
      for (int j = 0; j < cols_; ++j) ord[static_cast<size_t>(j)] = j;
      std::stable_sort(ord.begin(), ord.end(), [&p, i](int a, int b) {
        return p.at(i, a) > p.at(i, b);  // ties keep lower index first
      });
      auto& lp = logp_[static_cast<size_t>(i)];
      lp.resize(static_cast<size_t>(cols_));
      for (int r = 0; r < cols_; ++r)
        lp[static_cast<size_t>(r)] = std::log(std::max(p.at(i, ord[static_cast<size_t>(r)]), 1e-300));
    }
    std::vector<int> start(static_cast<size_t>(rows_), 0);
    seen_.insert(start);
    frontier_.push({joint(start), std::move(start)});
  }

  std::optional<VariableMapping> next() override {
    if (single_left_) {
      single_left_ = false;
      done_ = true;
      return base_;
    }
    if (done_ || frontier_.empty()) return std::nullopt;
    State s = frontier_.top();
    frontier_.pop();
    for (int i = 0; i < rows_; ++i) {
      if (s.ranks[static_cast<size_t>(i)] + 1 >= cols_) continue;
      std::vector<int> succ = s.ranks;
      succ[static_cast<size_t>(i)]++;
      if (seen_.insert(succ).second) frontier_.push({joint(succ), std::move(succ)});
    }
    return materialize(s);
  }

 private:
  struct State {
    double logp;
    std::vector<int> ranks;
    bool operator<(const State& o) const {
      if (logp != o.logp) return logp < o.logp;            // max-heap on probability
      return ranks > o.ranks;                              // then lex-smallest first
    }
  };

  double joint(const std::vector<int>& ranks) const {
    double sum = 0.0;
    for (int i = 0; i < rows_; ++i)
      sum += logp_[static_cast<size_t>(i)][static_cast<size_t>(ranks[static_cast<size_t>(i)])];
    return sum;
  }

  VariableMapping materialize(const State& s) const {
    VariableMapping m;
    m.buggy_names = base_.buggy_names;
    m.buggy_qualified = base_.buggy_qualified;
    m.correct_names = base_.correct_names;
    m.probabilities = base_.probabilities;
    m.log_prob = s.logp;
    for (int i = 0; i < rows_; ++i) {
      int col = order_[static_cast<size_t>(i)][static_cast<size_t>(s.ranks[static_cast<size_t>(i)])];
      m.assignment.push_back(col);
      m.row_prob.push_back(base_.probabilities.at(i, col));
    }
    return m;
  }

  VariableMapping base_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<int>> order_;     // per row, columns by descending p
  std::vector<std::vector<double>> logp_;   // per row, log p in rank order
  std::priority_queue<State> frontier_;
  std::set<std::vector<int>> seen_;
  bool done_ = false;
  bool single_left_ = false;
};

class UniformStream : public MappingStream {
 public:
  UniformStream(std::vector<std::string> buggy_names, std::vector<std::string> buggy_qualified,
                std::vector<std::string> correct_names, std::uint64_t seed)
      : buggy_names_(std::move(buggy_names)),
        buggy_qualified_(std::move(buggy_qualified)),
        correct_names_(std::move(correct_names)),
        rng_(seed) {
    rows_ = static_cast<int>(buggy_names_.size());
    cols_ = static_cast<int>(correct_names_.size());
    if (rows_ == 0 || cols_ == 0) {
      total_ = 0;
      return;
    }
    total_ = 1;
    for (int i = 0; i < rows_; ++i) {
      if (total_ > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(cols_)) {
        total_ = std::uint64_t{1} << 62;  // practically inexhaustible
        break;
      }
      total_ *= static_cast<std::uint64_t>(cols_);
    }
  }

  std::optional<VariableMapping> next() override {
    if (rows_ == 0 || cols_ == 0) {
      if (emitted_ == 0) {
        ++emitted_;
        VariableMapping m;
        m.buggy_names = buggy_names_;
        m.buggy_qualified = buggy_qualified_;
        m.correct_names = correct_names_;
        m.empty_flagged = true;
        return m;
      }
      return std::nullopt;
    }
    if (emitted_ >= total_) return std::nullopt;

    // Sparse Fisher-Yates: uniform permutation of [0, total) with memory
    // proportional to the number of draws.
    std::uint64_t k = emitted_++;
    std::uint64_t r = k + rng_.next_below(total_ - k);
    std::uint64_t vk = lookup(k);
    std::uint64_t vr = lookup(r);
    swapped_[k] = vr;
    swapped_[r] = vk;
    return materialize(vr);
  }

 private:
  std::uint64_t lookup(std::uint64_t i) const {
    auto it = swapped_.find(i);
    return it == swapped_.end() ? i : it->second;
  }

  VariableMapping materialize(std::uint64_t index) const {
    VariableMapping m;
    m.buggy_names = buggy_names_;
    m.buggy_qualified = buggy_qualified_;
    m.correct_names = correct_names_;
    const double p = 1.0 / cols_;
    for (int i = 0; i < rows_; ++i) {
      m.assignment.push_back(static_cast<int>(index % static_cast<std::uint64_t>(cols_)));
      index /= static_cast<std::uint64_t>(cols_);
      m.row_prob.push_back(p);
    }
    m.log_prob = rows_ * std::log(p);
    return m;
  }

  std::vector<std::string> buggy_names_;
  std::vector<std::string> buggy_qualified_;
  std::vector<std::string> correct_names_;
  Rng rng_;
  int rows_ = 0;
  int cols_ = 0;
  std::uint64_t total_ = 0;
  std::uint64_t emitted_ = 0;
  std::map<std::uint64_t, std::uint64_t> swapped_;
};

class SingleStream : public MappingStream {
 public:
  explicit SingleStream(VariableMapping m) : m_(std::move(m)) {}

  std::optional<VariableMapping> next() override {
    if (done_) return std::nullopt;
    done_ = true;
    return m_;
  }

 private:
  VariableMapping m_;
  bool done_ = false;
};

}  // namespace

std::unique_ptr<MappingStream> enumerate_mappings(VariableMapping predicted) {
  return std::make_unique<EnumerationStream>(std::move(predicted));
}

std::unique_ptr<MappingStream> uniform_mappings(const graph::ProgramGraph& buggy_graph,
                                                const graph::ProgramGraph& correct_graph,
                                                std::uint64_t seed) {
  return std::make_unique<UniformStream>(buggy_graph.var_names, buggy_graph.var_qualified,
                                         correct_graph.var_names, seed);
}

std::unique_ptr<MappingStream> single_mapping(VariableMapping m) {
  return std::make_unique<SingleStream>(std::move(m));
}

}  // namespace varmap::model
