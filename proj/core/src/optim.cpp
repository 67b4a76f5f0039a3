#include <cassert>
#include <cmath>

#include "varmap/optim.hpp"

namespace varmap::nn {

AdamState AdamState::init(const std::vector<Tensor*>& params, AdamConfig cfg) {
  AdamState s;
  s.cfg = cfg;
  for (const Tensor* p : params) {
    s.first_moment.push_back(zeros_like(*p));
    s.second_moment.push_back(zeros_like(*p));
  }
  return s;
}

void adam_step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads,
               AdamState& state) {
  assert(params.size() == grads.size());
  assert(params.size() == state.first_moment.size());
  ++state.step;
  const double b1 = state.cfg.beta1;
  const double b2 = state.cfg.beta2;
  const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  for (size_t k = 0; k < params.size(); ++k) {
    Tensor& p = *params[k];
    const Tensor& g = *grads[k];
    Tensor& m = state.first_moment[k];
    Tensor& v = state.second_moment[k];
    assert(p.same_shape(g) && p.same_shape(m));
    for (size_t i = 0; i < p.data.size(); ++i) {
      m.data[i] = b1 * m.data[i] + (1.0 - b1) * g.data[i];
      v.data[i] = b2 * v.data[i] + (1.0 - b2) * g.data[i] * g.data[i];
      const double mhat = m.data[i] / bc1;
      const double vhat = v.data[i] / bc2;
      p.data[i] -= state.cfg.lr * mhat / (std::sqrt(vhat) + state.cfg.eps);
    }
  }
}

}  // namespace varmap::nn
