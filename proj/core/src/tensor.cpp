#include <cassert>

#include "varmap/tensor.hpp"

namespace varmap::nn {

Tensor zeros_like(const Tensor& t) { return Tensor(t.rows, t.cols); }

void matmul_accum(Tensor& c, const Tensor& a, const Tensor& b) {
  assert(a.cols == b.rows && c.rows == a.rows && c.cols == b.cols);
  const int m = a.rows, k = a.cols, n = b.cols;
  for (int i = 0; i < m; ++i) {
    const double* arow = a.row(i);
    double* crow = c.row(i);
    for (int p = 0; p < k; ++p) {
      const double av = arow[p];
      const double* brow = b.row(p);
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  Tensor c(a.rows, b.cols);
  matmul_accum(c, a, b);
  return c;
}

void matmul_bt_accum(Tensor& c, const Tensor& a, const Tensor& b) {
  assert(a.cols == b.cols && c.rows == a.rows && c.cols == b.rows);
  const int m = a.rows, k = a.cols, n = b.rows;
  for (int i = 0; i < m; ++i) {
    const double* arow = a.row(i);
    double* crow = c.row(i);
    for (int j = 0; j < n; ++j) {
      const double* brow = b.row(j);
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
      crow[j] += acc;
    }
  }
}

Tensor matmul_bt(const Tensor& a, const Tensor& b) {
  Tensor c(a.rows, b.rows);
  matmul_bt_accum(c, a, b);
  return c;
}

Tensor transpose(const Tensor& a) {
  Tensor t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

void add_accum(Tensor& dst, const Tensor& src) {
  assert(dst.same_shape(src));
  for (size_t i = 0; i < dst.data.size(); ++i) dst.data[i] += src.data[i];
}

void axpy(Tensor& dst, double alpha, const Tensor& src) {
  assert(dst.same_shape(src));
  for (size_t i = 0; i < dst.data.size(); ++i) dst.data[i] += alpha * src.data[i];
}

}  // namespace varmap::nn
