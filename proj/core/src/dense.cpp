#include "ideolab/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ideolab/errors.hpp"

namespace ideolab {

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols, rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
  return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols != b.rows) throw DimensionError("matmul: inner dimensions differ");
  DenseMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      const double* brow = b.data.data() + k * b.cols;
      double* orow = out.data.data() + i * out.cols;
      for (std::size_t j = 0; j < b.cols; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != b.rows) throw DimensionError("matmul_at_b: row counts differ");
  DenseMatrix out(a.cols, b.cols);
  for (std::size_t r = 0; r < a.rows; ++r) {
    const double* arow = a.data.data() + r * a.cols;
    const double* brow = b.data.data() + r * b.cols;
    for (std::size_t i = 0; i < a.cols; ++i) {
      const double ari = arow[i];
      if (ari == 0.0) continue;
      double* orow = out.data.data() + i * out.cols;
      for (std::size_t j = 0; j < b.cols; ++j) orow[j] += ari * brow[j];
    }
  }
  return out;
}

DenseMatrix thin_qr_q(const DenseMatrix& a) {
  if (a.rows < a.cols) throw DimensionError("thin_qr_q: needs rows >= cols");
  const std::size_t m = a.rows, n = a.cols;
  DenseMatrix r = a;                       // reduced in place
  std::vector<std::vector<double>> hh;     // Householder vectors, unit head
  hh.reserve(n);
  std::vector<double> betas;
  betas.reserve(n);

  for (std::size_t k = 0; k < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) norm2 += r.at(i, k) * r.at(i, k);
    const double norm = std::sqrt(norm2);
    std::vector<double> v(m - k, 0.0);
    double beta = 0.0;
    if (norm > 0.0) {
      const double alpha = r.at(k, k) >= 0.0 ? -norm : norm;
      v[0] = r.at(k, k) - alpha;
      for (std::size_t i = k + 1; i < m; ++i) v[i - k] = r.at(i, k);
      double vtv = 0.0;
      for (const double x : v) vtv += x * x;
      if (vtv > 0.0) {
        beta = 2.0 / vtv;
        // Apply reflector to remaining columns of R.
        for (std::size_t j = k; j < n; ++j) {
          double dot = 0.0;
          for (std::size_t i = k; i < m; ++i) dot += v[i - k] * r.at(i, j);
          dot *= beta;
          for (std::size_t i = k; i < m; ++i) r.at(i, j) -= dot * v[i - k];
        }
      }
    }
    hh.push_back(std::move(v));
    betas.push_back(beta);
  }

  // Accumulate Q = H_0 ... H_{n-1} applied to the first n identity columns.
  DenseMatrix q(m, n);
  for (std::size_t j = 0; j < n; ++j) q.at(j, j) = 1.0;
  for (std::size_t k = n; k-- > 0;) {
    if (betas[k] == 0.0) continue;
    const auto& v = hh[k];
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < m; ++i) dot += v[i - k] * q.at(i, j);
      dot *= betas[k];
      for (std::size_t i = k; i < m; ++i) q.at(i, j) -= dot * v[i - k];
    }
  }
  return q;
}

namespace {

// One-sided Jacobi on a tall matrix (rows >= cols), in place. Columns are
// rotated until mutually orthogonal; returns V accumulating the rotations.
SmallSvd jacobi_svd_tall(DenseMatrix a) {
  const std::size_t m = a.rows, n = a.cols;
  DenseMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v.at(i, i) = 1.0;

  const double eps = 1e-15;
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double xp = a.at(i, p), xq = a.at(i, q);
          app += xp * xp;
          aqq += xq * xq;
          apq += xp * xq;
        }
        if (std::abs(apq) <= eps * std::sqrt(app * aqq) || apq == 0.0) continue;
        rotated = true;
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double xp = a.at(i, p), xq = a.at(i, q);
          a.at(i, p) = c * xp - s * xq;
          a.at(i, q) = s * xp + c * xq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v.at(i, p), vq = v.at(i, q);
          v.at(i, p) = c * vp - s * vq;
          v.at(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) ss += a.at(i, j) * a.at(i, j);
    sigma[j] = std::sqrt(ss);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  // Singular values at the round-off floor are numerical rank deficiency;
  // their columns carry noise directions Jacobi cannot orthogonalize. Snap
  // them to zero so they get replaced below.
  const double tol = static_cast<double>(std::max(m, n)) *
                     std::numeric_limits<double>::epsilon() * sigma[order[0]];

  SmallSvd out;
  out.sigma.resize(n);
  out.u = DenseMatrix(m, n);
  out.v = DenseMatrix(n, n);
  for (std::size_t jj = 0; jj < n; ++jj) {
    const std::size_t j = order[jj];
    out.sigma[jj] = sigma[j] > tol ? sigma[j] : 0.0;
    if (out.sigma[jj] > 0.0) {
      const double inv = 1.0 / sigma[j];
      for (std::size_t i = 0; i < m; ++i) out.u.at(i, jj) = a.at(i, j) * inv;
    }
    for (std::size_t i = 0; i < n; ++i) out.v.at(i, jj) = v.at(i, j);
  }

  // Zero singular values leave zero U columns; U must stay orthonormal even
  // for rank-deficient input. Complete each with the first canonical vector
  // that keeps enough mass after projecting out the other columns. Some
  // candidate always clears the threshold: the residuals of all m canonical
  // vectors sum to at least m - n.
  std::vector<double> cand(m);
  for (std::size_t jj = 0; jj < n; ++jj) {
    if (out.sigma[jj] != 0.0) continue;
    for (std::size_t k = 0; k < m; ++k) {
      std::fill(cand.begin(), cand.end(), 0.0);
      cand[k] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t c = 0; c < n; ++c) {
          double dot = 0.0;
          for (std::size_t i = 0; i < m; ++i) dot += out.u.at(i, c) * cand[i];
          for (std::size_t i = 0; i < m; ++i) cand[i] -= dot * out.u.at(i, c);
        }
      double nrm2 = 0.0;
      for (const double x : cand) nrm2 += x * x;
      if (nrm2 * static_cast<double>(m) >= 0.5) {
        const double inv = 1.0 / std::sqrt(nrm2);
        for (std::size_t i = 0; i < m; ++i) out.u.at(i, jj) = cand[i] * inv;
        break;
      }
    }
  }
  return out;
}

}  // namespace

SmallSvd small_svd(const DenseMatrix& a) {
  if (a.rows == 0 || a.cols == 0) throw DimensionError("small_svd: empty matrix");
  if (a.rows >= a.cols) {
    if (a.rows > 4 * a.cols && a.rows > 64) {
      // Tall and skinny: QR first so Jacobi works on a cols x cols core.
      DenseMatrix q = thin_qr_q(a);
      DenseMatrix r = matmul_at_b(q, a);
      SmallSvd core = jacobi_svd_tall(r);
      core.u = matmul(q, core.u);
      return core;
    }
    return jacobi_svd_tall(a);
  }
  // Wide: decompose the transpose and swap factors.
  SmallSvd t = small_svd(a.transposed());
  SmallSvd out;
  out.u = std::move(t.v);
  out.v = std::move(t.u);
  out.sigma = std::move(t.sigma);
  return out;
}

}  // namespace ideolab
