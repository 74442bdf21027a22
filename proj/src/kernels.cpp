#include "synbench/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include <omp.h>

#include "synbench/par.hpp"

namespace synbench::kern {

namespace {

// Fork/join costs real time; below this many multiply-adds a call runs
// inline on the calling thread.
constexpr double kMinParallelWork = 8e6;

bool parallel(double work) { return par::threads() > 1 && work > kMinParallelWork; }

}  // namespace

void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
  assert(a.cols == b.rows);
  c.rows = a.rows;
  c.cols = b.cols;
  c.data.assign(static_cast<std::size_t>(a.rows * b.cols), 0.0);
  const idx_t n = a.rows, p = a.cols, q = b.cols;
  const bool par = parallel(static_cast<double>(n) * p * q);
  const int nt = par::threads();
#pragma omp parallel for num_threads(nt) if (par) schedule(static)
  for (idx_t i = 0; i < n; ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (idx_t k = 0; k < p; ++k) {
      const double aik = ai[k];
      const double* bk = b.row(k);
      for (idx_t j = 0; j < q; ++j) ci[j] += aik * bk[j];
    }
  }
}

void matmul_at_b(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
  assert(a.rows == b.rows);
  c.rows = a.cols;
  c.cols = b.cols;
  c.data.assign(static_cast<std::size_t>(a.cols * b.cols), 0.0);
  const idx_t n = a.rows, p = a.cols, q = b.cols;
  const bool par = parallel(static_cast<double>(n) * p * q);
  const int nt = par::threads();
  // Each thread owns a contiguous block of C rows; the i loop stays outermost
  // so A and B rows stream through cache, and each C element still
  // accumulates in ascending-i order.
#pragma omp parallel num_threads(nt) if (par)
  {
    const int tid = omp_get_thread_num();
    const int tcount = omp_get_num_threads();
    const idx_t r0 = p * tid / tcount;
    const idx_t r1 = p * (tid + 1) / tcount;
    for (idx_t i = 0; i < n; ++i) {
      const double* ai = a.row(i);
      const double* bi = b.row(i);
      for (idx_t r = r0; r < r1; ++r) {
        const double air = ai[r];
        double* cr = c.row(r);
        for (idx_t j = 0; j < q; ++j) cr[j] += air * bi[j];
      }
    }
  }
}

void matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
  assert(a.cols == b.cols);
  c.rows = a.rows;
  c.cols = b.rows;
  c.data.assign(static_cast<std::size_t>(a.rows * b.rows), 0.0);
  const idx_t n = a.rows, q = a.cols, p = b.rows;
  const bool par = parallel(static_cast<double>(n) * p * q);
  const int nt = par::threads();
#pragma omp parallel for num_threads(nt) if (par) schedule(static)
  for (idx_t i = 0; i < n; ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (idx_t r = 0; r < p; ++r) {
      const double* br = b.row(r);
      double s = 0.0;
      for (idx_t j = 0; j < q; ++j) s += ai[j] * br[j];
      ci[r] = s;
    }
  }
}

void spmm(const CsrMatrix& s, const DenseMatrix& b, DenseMatrix& c) {
  assert(s.cols == b.rows);
  c.rows = s.rows;
  c.cols = b.cols;
  c.data.assign(static_cast<std::size_t>(s.rows * b.cols), 0.0);
  const idx_t n = s.rows, q = b.cols;
  const bool par = parallel(static_cast<double>(s.nnz()) * q);
  const int nt = par::threads();
#pragma omp parallel for num_threads(nt) if (par) schedule(static)
  for (idx_t i = 0; i < n; ++i) {
    double* ci = c.row(i);
    for (idx_t e = s.offsets[i]; e < s.offsets[i + 1]; ++e) {
      const double v = s.values[e];
      const double* bj = b.row(s.col_indices[e]);
      for (idx_t j = 0; j < q; ++j) ci[j] += v * bj[j];
    }
  }
}

void csr_t_matmul(const CsrMatrix& x, const DenseMatrix& d, DenseMatrix& c) {
  assert(x.rows == d.rows);
  c.rows = x.cols;
  c.cols = d.cols;
  c.data.assign(static_cast<std::size_t>(x.cols * d.cols), 0.0);
  const idx_t n = x.rows, q = d.cols;
  const bool par = parallel(static_cast<double>(x.nnz()) * q);
  const int nt = par::threads();
#pragma omp parallel num_threads(nt) if (par)
  {
    const int tid = omp_get_thread_num();
    const int tcount = omp_get_num_threads();
    const idx_t j0 = q * tid / tcount;
    const idx_t j1 = q * (tid + 1) / tcount;
    for (idx_t i = 0; i < n; ++i) {
      const double* di = d.row(i);
      for (idx_t e = x.offsets[i]; e < x.offsets[i + 1]; ++e) {
        const double v = x.values[e];
        double* cr = c.row(x.col_indices[e]);
        for (idx_t j = j0; j < j1; ++j) cr[j] += v * di[j];
      }
    }
  }
}

void relu(const DenseMatrix& x, DenseMatrix& y) {
  y.rows = x.rows;
  y.cols = x.cols;
  y.data.resize(x.data.size());
  const idx_t total = static_cast<idx_t>(x.data.size());
  const bool par = parallel(static_cast<double>(total));
  const int nt = par::threads();
#pragma omp parallel for num_threads(nt) if (par) schedule(static)
  for (idx_t i = 0; i < total; ++i) y.data[i] = x.data[i] > 0.0 ? x.data[i] : 0.0;
}

void relu_backward(const DenseMatrix& x, const DenseMatrix& dy, DenseMatrix& dz) {
  assert(x.data.size() == dy.data.size());
  dz.rows = x.rows;
  dz.cols = x.cols;
  dz.data.resize(x.data.size());
  const idx_t total = static_cast<idx_t>(x.data.size());
  const bool par = parallel(static_cast<double>(total));
  const int nt = par::threads();
#pragma omp parallel for num_threads(nt) if (par) schedule(static)
  for (idx_t i = 0; i < total; ++i) dz.data[i] = x.data[i] > 0.0 ? dy.data[i] : 0.0;
}

void row_softmax(DenseMatrix& z) {
  const idx_t n = z.rows, k = z.cols;
  const bool par = parallel(8.0 * static_cast<double>(n) * k);  // exp is pricey
  const int nt = par::threads();
#pragma omp parallel for num_threads(nt) if (par) schedule(static)
  for (idx_t i = 0; i < n; ++i) {
    double* zi = z.row(i);
    double mx = zi[0];
    for (idx_t j = 1; j < k; ++j) mx = std::max(mx, zi[j]);
    double sum = 0.0;
    for (idx_t j = 0; j < k; ++j) {
      zi[j] = std::exp(zi[j] - mx);
      sum += zi[j];
    }
    for (idx_t j = 0; j < k; ++j) zi[j] /= sum;
  }
}

}  // namespace synbench::kern
