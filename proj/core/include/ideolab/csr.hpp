#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ideolab {

// Compressed sparse row matrix of doubles. Canonical form is maintained by
// every constructor and operation: column indices strictly increasing within
// each row, no explicit zeros, row_ptr.size() == rows + 1.
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::uint32_t> col_idx;
  std::vector<double> values;

  std::size_t nnz() const { return values.size(); }

  std::span<const std::uint32_t> row_cols(std::size_t r) const {
    return {col_idx.data() + row_ptr[r], col_idx.data() + row_ptr[r + 1]};
  }
  std::span<const double> row_vals(std::size_t r) const {
    return {values.data() + row_ptr[r], values.data() + row_ptr[r + 1]};
  }

  // Value at (r, c); binary search within the row.
  double at(std::size_t r, std::size_t c) const;

  bool structurally_equal(const CsrMatrix& other) const;

  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;
  // Number of structural nonzeros per row / per column.
  std::vector<std::size_t> row_nnz() const;
  std::vector<std::size_t> col_nnz() const;

  // y = A x  (x has cols entries, result has rows entries).
  std::vector<double> multiply(std::span<const double> x) const;
  // y = A^T x  (x has rows entries, result has cols entries).
  std::vector<double> multiply_transposed(std::span<const double> x) const;

  double frobenius_norm_squared() const;

  CsrMatrix select_rows(std::span<const std::size_t> keep) const;
  // keep lists surviving column indices in strictly increasing order; the
  // result renumbers them 0..keep.size()-1.
  CsrMatrix select_cols(std::span<const std::size_t> keep) const;

  // Every stored value becomes 1.0 (stored values are assumed nonzero).
  CsrMatrix binarized() const;

  // Scales each row to unit L2 norm; zero rows stay zero.
  void normalize_rows_l2();

  std::vector<double> to_dense() const;  // row-major rows*cols
};

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

// Builds canonical CSR from unordered triplets; duplicate (row, col) entries
// are summed, entries that sum to exactly 0.0 are dropped.
CsrMatrix csr_from_triplets(std::size_t rows, std::size_t cols,
                            std::vector<Triplet> triplets);

CsrMatrix csr_from_dense(std::size_t rows, std::size_t cols,
                         std::span<const double> dense);

}  // namespace ideolab
