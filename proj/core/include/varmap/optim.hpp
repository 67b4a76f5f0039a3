#pragma once

// Adam with bias correction, standard defaults.

#include <cstdint>
#include <vector>

#include "varmap/tensor.hpp"

namespace varmap::nn {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  AdamConfig cfg;
  std::int64_t step = 0;
  std::vector<Tensor> first_moment;
  std::vector<Tensor> second_moment;

  static AdamState init(const std::vector<Tensor*>& params, AdamConfig cfg = {});
};

// One update over all parameters; grads are parallel to params.
void adam_step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads,
               AdamState& state);

}  // namespace varmap::nn
