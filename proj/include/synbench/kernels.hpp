#pragma once
#include "synbench/matrix.hpp"

// OpenMP-parallel linear-algebra kernels.
//
// Determinism contract: every output element is accumulated by exactly one
// thread in a fixed index order, so results are bitwise identical for any
// thread count or schedule. Tests check each kernel against the serial
// reference implementations in synbench::refkern (kernels_ref.cpp) for
// bitwise equality; benchmarks/kernel_bench compares their throughput.
namespace synbench::kern {

// C = A * B
void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);

// C = A^T * B  (A: n x p, B: n x q, C: p x q)
void matmul_at_b(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);

// C = A * B^T  (A: n x q, B: p x q, C: n x p)
void matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);

// C = S * B for CSR S (also covers sparse-attribute times dense weight).
void spmm(const CsrMatrix& s, const DenseMatrix& b, DenseMatrix& c);

// C = X^T * D  (X: CSR n x d, D: n x q, C: d x q). Parallel over column
// stripes of C; every thread scans all of X in row order.
void csr_t_matmul(const CsrMatrix& x, const DenseMatrix& d, DenseMatrix& c);

// y = max(x, 0), elementwise.
void relu(const DenseMatrix& x, DenseMatrix& y);

// dz = dy where x > 0, else 0.
void relu_backward(const DenseMatrix& x, const DenseMatrix& dy, DenseMatrix& dz);

// In-place row-wise softmax.
void row_softmax(DenseMatrix& z);

}  // namespace synbench::kern

// Plain serial reference implementations, kept for testing the parallel
// kernels and for the kernel benchmark.
namespace synbench::refkern {

void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
void matmul_at_b(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
void matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
void spmm(const CsrMatrix& s, const DenseMatrix& b, DenseMatrix& c);
void csr_t_matmul(const CsrMatrix& x, const DenseMatrix& d, DenseMatrix& c);
void relu(const DenseMatrix& x, DenseMatrix& y);
void relu_backward(const DenseMatrix& x, const DenseMatrix& dy, DenseMatrix& dz);
void row_softmax(DenseMatrix& z);

}  // namespace synbench::refkern
