#pragma once

// Dense row-major 64-bit float tensors (at most 2-D) and the handful of
// kernels the model needs. Accumulation order is fixed everywhere so equal
// inputs give bit-equal outputs.

#include <cstddef>
#include <vector>

namespace varmap::nn {

struct Tensor {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Tensor() = default;
  Tensor(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

  double& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  double at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }
  double* row(int i) { return data.data() + static_cast<size_t>(i) * cols; }
  const double* row(int i) const { return data.data() + static_cast<size_t>(i) * cols; }

  size_t size() const { return data.size(); }
  bool same_shape(const Tensor& o) const { return rows == o.rows && cols == o.cols; }
  void fill(double v) { data.assign(data.size(), v); }

  bool operator==(const Tensor&) const = default;
};

Tensor zeros_like(const Tensor& t);

// C += A * B
void matmul_accum(Tensor& c, const Tensor& a, const Tensor& b);
Tensor matmul(const Tensor& a, const Tensor& b);

// C += A * B^T
void matmul_bt_accum(Tensor& c, const Tensor& a, const Tensor& b);
Tensor matmul_bt(const Tensor& a, const Tensor& b);

Tensor transpose(const Tensor& a);

void add_accum(Tensor& dst, const Tensor& src);             // dst += src
void axpy(Tensor& dst, double alpha, const Tensor& src);    // dst += alpha * src

}  // namespace varmap::nn
