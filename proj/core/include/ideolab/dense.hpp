#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ideolab {

// Minimal row-major dense matrix; just enough linear algebra for the
// randomized SVD and for feature blocks. Not a general BLAS.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // rows * cols, row-major

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

  DenseMatrix transposed() const;
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);          // a * b
DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b);     // a^T * b

// Thin QR via Householder reflections; requires rows >= cols. Returns Q with
// orthonormal columns (rows x cols). Rank deficiency is tolerated: zero
// columns of R produce arbitrary orthonormal completion directions.
DenseMatrix thin_qr_q(const DenseMatrix& a);

struct SmallSvd {
  DenseMatrix u;                 // rows x k
  std::vector<double> sigma;     // k, descending, nonnegative
  DenseMatrix v;                 // cols x k
};

// Full SVD of a small dense matrix, k = min(rows, cols). One-sided Jacobi on
// the tall orientation; wide inputs are transposed internally. Accurate to
// machine precision on the matrix sizes the randomized SVD produces.
SmallSvd small_svd(const DenseMatrix& a);

}  // namespace ideolab
