#pragma once
#include <cstdint>
#include <span>
#include <vector>

namespace synbench {

using idx_t = std::int64_t;

// Row-major dense matrix of doubles.
struct DenseMatrix {
  idx_t rows = 0;
  idx_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(idx_t r, idx_t c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r * c), fill) {}

  double& at(idx_t r, idx_t c) { return data[static_cast<std::size_t>(r * cols + c)]; }
  double at(idx_t r, idx_t c) const { return data[static_cast<std::size_t>(r * cols + c)]; }
  double* row(idx_t r) { return data.data() + r * cols; }
  const double* row(idx_t r) const { return data.data() + r * cols; }

  void fill(double v) { std::fill(data.begin(), data.end(), v); }

  bool operator==(const DenseMatrix&) const = default;
};

// Compressed sparse row matrix of doubles.
struct CsrMatrix {
  idx_t rows = 0;
  idx_t cols = 0;
  std::vector<idx_t> offsets;       // length rows+1
  std::vector<idx_t> col_indices;   // length nnz, ascending within each row
  std::vector<double> values;       // length nnz

  idx_t nnz() const { return static_cast<idx_t>(col_indices.size()); }

  std::span<const idx_t> row_cols(idx_t r) const {
    return {col_indices.data() + offsets[r],
            static_cast<std::size_t>(offsets[r + 1] - offsets[r])};
  }
  std::span<const double> row_vals(idx_t r) const {
    return {values.data() + offsets[r],
            static_cast<std::size_t>(offsets[r + 1] - offsets[r])};
  }

  bool operator==(const CsrMatrix&) const = default;
};

}  // namespace synbench
