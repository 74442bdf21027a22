#include <algorithm>
#include <cassert>
#include <cmath>

#include "synbench/kernels.hpp"

// Naive single-threaded implementations. These are the test oracles for the
// OpenMP kernels, so they stay simple on purpose.
namespace synbench::refkern {

void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
  assert(a.cols == b.rows);
  c = DenseMatrix(a.rows, b.cols);
  for (idx_t i = 0; i < a.rows; ++i)
    for (idx_t j = 0; j < b.cols; ++j) {
      double s = 0.0;
      for (idx_t k = 0; k < a.cols; ++k) s += a.at(i, k) * b.at(k, j);
      c.at(i, j) = s;
    }
}

void matmul_at_b(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
  assert(a.rows == b.rows);
  c = DenseMatrix(a.cols, b.cols);
  for (idx_t r = 0; r < a.cols; ++r)
    for (idx_t j = 0; j < b.cols; ++j) {
      double s = 0.0;
      for (idx_t i = 0; i < a.rows; ++i) s += a.at(i, r) * b.at(i, j);
      c.at(r, j) = s;
    }
}

void matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
  assert(a.cols == b.cols);
  c = DenseMatrix(a.rows, b.rows);
  for (idx_t i = 0; i < a.rows; ++i)
    for (idx_t r = 0; r < b.rows; ++r) {
      double s = 0.0;
      for (idx_t j = 0; j < a.cols; ++j) s += a.at(i, j) * b.at(r, j);
      c.at(i, r) = s;
    }
}

void spmm(const CsrMatrix& s, const DenseMatrix& b, DenseMatrix& c) {
  assert(s.cols == b.rows);
  c = DenseMatrix(s.rows, b.cols);
  for (idx_t i = 0; i < s.rows; ++i)
    for (idx_t e = s.offsets[i]; e < s.offsets[i + 1]; ++e)
      for (idx_t j = 0; j < b.cols; ++j)
        c.at(i, j) += s.values[e] * b.at(s.col_indices[e], j);
}

void csr_t_matmul(const CsrMatrix& x, const DenseMatrix& d, DenseMatrix& c) {
  assert(x.rows == d.rows);
  c = DenseMatrix(x.cols, d.cols);
  for (idx_t i = 0; i < x.rows; ++i)
    for (idx_t e = x.offsets[i]; e < x.offsets[i + 1]; ++e)
      for (idx_t j = 0; j < d.cols; ++j)
        c.at(x.col_indices[e], j) += x.values[e] * d.at(i, j);
}

void relu(const DenseMatrix& x, DenseMatrix& y) {
  y = x;
  for (double& v : y.data) v = std::max(v, 0.0);
}

void relu_backward(const DenseMatrix& x, const DenseMatrix& dy, DenseMatrix& dz) {
  dz = dy;
  for (std::size_t i = 0; i < x.data.size(); ++i)
    if (x.data[i] <= 0.0) dz.data[i] = 0.0;
}

void row_softmax(DenseMatrix& z) {
  for (idx_t i = 0; i < z.rows; ++i) {
    double* zi = z.row(i);
    double mx = *std::max_element(zi, zi + z.cols);
    double sum = 0.0;
    for (idx_t j = 0; j < z.cols; ++j) {
      zi[j] = std::exp(zi[j] - mx);
      sum += zi[j];
    }
    for (idx_t j = 0; j < z.cols; ++j) zi[j] /= sum;
  }
}

}  // namespace synbench::refkern
