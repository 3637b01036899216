#include "ideolab/svd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ideolab/errors.hpp"
#include "ideolab/rng.hpp"

namespace ideolab {

namespace {

// y = X * w  for sparse X (n x p) and dense w (p x l).
DenseMatrix sparse_times_dense(const CsrMatrix& x, const DenseMatrix& w) {
  DenseMatrix y(x.rows, w.cols);
  for (std::size_t r = 0; r < x.rows; ++r) {
    double* yrow = y.data.data() + r * y.cols;
    for (std::size_t k = x.row_ptr[r]; k < x.row_ptr[r + 1]; ++k) {
      const double v = x.values[k];
      const double* wrow = w.data.data() + x.col_idx[k] * w.cols;
      for (std::size_t j = 0; j < w.cols; ++j) yrow[j] += v * wrow[j];
    }
  }
  return y;
}

// z = X^T * q  for sparse X (n x p) and dense q (n x l). Row-serial so the
// accumulation order per output entry is fixed.
DenseMatrix sparse_t_times_dense(const CsrMatrix& x, const DenseMatrix& q) {
  DenseMatrix z(x.cols, q.cols);
  for (std::size_t r = 0; r < x.rows; ++r) {
    const double* qrow = q.data.data() + r * q.cols;
    for (std::size_t k = x.row_ptr[r]; k < x.row_ptr[r + 1]; ++k) {
      const double v = x.values[k];
      double* zrow = z.data.data() + x.col_idx[k] * z.cols;
      for (std::size_t j = 0; j < q.cols; ++j) zrow[j] += v * qrow[j];
    }
  }
  return z;
}

struct MatrixOps {
  std::size_t rows, cols;
  const CsrMatrix* sp = nullptr;
  const DenseMatrix* de = nullptr;

  DenseMatrix apply(const DenseMatrix& w) const {
    return sp ? sparse_times_dense(*sp, w) : matmul(*de, w);
  }
  DenseMatrix apply_t(const DenseMatrix& q) const {
    return sp ? sparse_t_times_dense(*sp, q) : matmul_at_b(*de, q);
  }
  double frob_sq() const {
    if (sp) return sp->frobenius_norm_squared();
    double s = 0.0;
    for (const double v : de->data) s += v * v;
    return s;
  }
};

TruncatedSvd randomized_svd(const MatrixOps& x, std::size_t q, std::uint64_t seed,
                            int n_power_iters, std::size_t oversample) {
  const std::size_t min_dim = std::min(x.rows, x.cols);
  if (q < 1 || q > min_dim)
    throw DimensionError("svd: q must be in [1, min(rows, cols)], got " + std::to_string(q));
  if (x.frob_sq() == 0.0) throw ZeroMatrix("svd: input matrix is all zeros");
  if (n_power_iters < 0) throw ConfigInvalid("svd: n_power_iters must be >= 0");

  const std::size_t l = std::min(q + oversample, min_dim);

  Rng rng = Rng::derived(seed, 0x53564400ULL);  // one stream for the sketch
  DenseMatrix omega(x.cols, l);
  for (double& v : omega.data) v = rng.normal();

  DenseMatrix y = x.apply(omega);
  DenseMatrix qmat = thin_qr_q(y);
  for (int t = 0; t < n_power_iters; ++t) {
    DenseMatrix z = thin_qr_q(x.apply_t(qmat));
    qmat = thin_qr_q(x.apply(z));
  }

  // b = Q^T X  (l x p), small; SVD of b gives the truncated factors.
  DenseMatrix bt = x.apply_t(qmat);  // p x l
  SmallSvd core = small_svd(bt);     // bt = core.u * diag(sigma) * core.v^T

  // bt = V * S * W^T with V = core.u (p x l); B = W * S * V^T, so
  // X ~ Q W S V^T: U = Q * W, right factor core.u is V directly.
  TruncatedSvd out;
  out.q = q;
  out.sigma.assign(core.sigma.begin(), core.sigma.begin() + static_cast<std::ptrdiff_t>(q));
  DenseMatrix u_full = matmul(qmat, core.v);  // n x l
  out.u = DenseMatrix(x.rows, q);
  out.v = DenseMatrix(x.cols, q);
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t i = 0; i < x.rows; ++i) out.u.at(i, j) = u_full.at(i, j);
    for (std::size_t i = 0; i < x.cols; ++i) out.v.at(i, j) = core.u.at(i, j);
  }

  // Deterministic sign: largest-magnitude entry of each V column positive.
  for (std::size_t j = 0; j < q; ++j) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < x.cols; ++i) {
      const double a = std::abs(out.v.at(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (out.v.at(arg, j) < 0.0) {
      for (std::size_t i = 0; i < x.cols; ++i) out.v.at(i, j) = -out.v.at(i, j);
      for (std::size_t i = 0; i < x.rows; ++i) out.u.at(i, j) = -out.u.at(i, j);
    }
  }
  return out;
}

}  // namespace

TruncatedSvd svd(const CsrMatrix& x, std::size_t q, std::uint64_t seed,
                 int n_power_iters, std::size_t oversample) {
  MatrixOps ops{x.rows, x.cols, &x, nullptr};
  return randomized_svd(ops, q, seed, n_power_iters, oversample);
}

TruncatedSvd svd_dense(const DenseMatrix& x, std::size_t q, std::uint64_t seed,
                       int n_power_iters, std::size_t oversample) {
  MatrixOps ops{x.rows, x.cols, nullptr, &x};
  return randomized_svd(ops, q, seed, n_power_iters, oversample);
}

FeatureBlock project(const CsrMatrix& x_new, const TruncatedSvd& f) {
  if (x_new.cols != f.v.rows)
    throw DimensionError("project: matrix has " + std::to_string(x_new.cols) +
                         " cols, basis expects " + std::to_string(f.v.rows));
  FeatureBlock b;
  b.provenance = Provenance::svd_scores;
  b.x = sparse_times_dense(x_new, f.v);
  return b;
}

FeatureBlock project(const FeatureBlock& x_new, const TruncatedSvd& f) {
  if (x_new.x.cols != f.v.rows)
    throw DimensionError("project: block has " + std::to_string(x_new.x.cols) +
                         " cols, basis expects " + std::to_string(f.v.rows));
  FeatureBlock b;
  b.provenance = Provenance::svd_scores;
  b.x = matmul(x_new.x, f.v);
  return b;
}

double variance_explained(const TruncatedSvd& f, const CsrMatrix& x) {
  const double total = x.frobenius_norm_squared();
  if (total == 0.0) throw ZeroMatrix("variance_explained: zero matrix");
  double s = 0.0;
  for (const double v : f.sigma) s += v * v;
  return s / total;
}

double variance_explained(const TruncatedSvd& f, const DenseMatrix& x) {
  double total = 0.0;
  for (const double v : x.data) total += v * v;
  if (total == 0.0) throw ZeroMatrix("variance_explained: zero matrix");
  double s = 0.0;
  for (const double v : f.sigma) s += v * v;
  return s / total;
}

}  // namespace ideolab
