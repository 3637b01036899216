#pragma once

#include <cstdint>
#include <vector>

#include "ideolab/csr.hpp"
#include "ideolab/dense.hpp"
#include "ideolab/feature_block.hpp"

namespace ideolab {

// Truncated SVD factorization X ~ U diag(sigma) V^T of the raw (uncentered)
// matrix. Interaction matrices are sparse and nonnegative; centering would
// densify them, so it is never performed.
struct TruncatedSvd {
  DenseMatrix u;              // n x q, orthonormal columns
  std::vector<double> sigma;  // q, descending, nonnegative
  DenseMatrix v;              // p x q, orthonormal columns
  std::size_t q = 0;
};

// Randomized range-finder SVD with power iterations. Deterministic in seed.
// Sign convention: each V column is flipped so its largest-magnitude entry is
// positive (first such entry on ties); U flips along with it.
// Requires 1 <= q <= min(rows, cols); throws ZeroMatrix on an all-zero input.
TruncatedSvd svd(const CsrMatrix& x, std::size_t q, std::uint64_t seed,
                 int n_power_iters = 4, std::size_t oversample = 10);

// Scores for new rows in the fitted basis: x_new * V. Column count must match.
FeatureBlock project(const CsrMatrix& x_new, const TruncatedSvd& f);
FeatureBlock project(const FeatureBlock& x_new, const TruncatedSvd& f);

// Dense-input variant used when the design matrix is already dense (scaled
// combined blocks). Same algorithm, same seed discipline.
TruncatedSvd svd_dense(const DenseMatrix& x, std::size_t q, std::uint64_t seed,
                       int n_power_iters = 4, std::size_t oversample = 10);

// sum(sigma_i^2) / ||X||_F^2.
double variance_explained(const TruncatedSvd& f, const CsrMatrix& x);
double variance_explained(const TruncatedSvd& f, const DenseMatrix& x);

}  // namespace ideolab
