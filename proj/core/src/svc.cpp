#include "ideolab/svc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ideolab/errors.hpp"

namespace ideolab {

double svc_objective(const DenseMatrix& x, const std::vector<int>& y_pm1, double beta0,
                     std::span<const double> beta, double c) {
  double reg = 0.0;
  for (const double b : beta) reg += b * b;
  double hinge = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    double f = beta0;
    const double* row = x.data.data() + i * x.cols;
    for (std::size_t j = 0; j < x.cols; ++j) f += beta[j] * row[j];
    hinge += std::max(0.0, 1.0 - static_cast<double>(y_pm1[i]) * f);
  }
  return 0.5 * reg + c * hinge;
}

std::vector<double> svc_subgradient(const DenseMatrix& x, const std::vector<int>& y_pm1,
                                    double beta0, std::span<const double> beta, double c) {
  std::vector<double> g(x.cols + 1, 0.0);  // [0] = d/d beta0
  for (std::size_t j = 0; j < x.cols; ++j) g[j + 1] = beta[j];
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double yi = static_cast<double>(y_pm1[i]);
    double f = beta0;
    const double* row = x.data.data() + i * x.cols;
    for (std::size_t j = 0; j < x.cols; ++j) f += beta[j] * row[j];
    if (1.0 - yi * f > 0.0) {
      g[0] -= c * yi;
      for (std::size_t j = 0; j < x.cols; ++j) g[j + 1] -= c * yi * row[j];
    }
  }
  return g;
}

LinearSvcModel linear_svc_fit(const DenseMatrix& x, const std::vector<int>& y_pm1,
                              const SvcConfig& cfg) {
  const std::size_t n = x.rows;
  if (n == 0) throw EmptyTrainingSet("linear_svc_fit: no rows");
  if (y_pm1.size() != n) throw LengthMismatch("linear_svc_fit: y length != row count");
  if (cfg.c <= 0.0) throw ConfigInvalid("linear_svc_fit: c must be > 0");
  bool pos = false, neg = false;
  for (const int v : y_pm1) {
    if (v == 1) pos = true;
    else if (v == -1) neg = true;
    else throw UnknownLabel("linear_svc_fit: labels must be -1 or +1");
  }
  if (!pos || !neg) throw SingleClass("linear_svc_fit: both classes must be present");
  for (const double v : x.data)
    if (!std::isfinite(v)) throw NonFinite("linear_svc_fit: non-finite feature");

  // Dual: minimize 0.5 a^T Q a - e^T a with Q_ij = y_i y_j x_i.x_j, subject
  // to y^T a = 0 and 0 <= a_i <= c. The linear kernel lets us carry
  // w = sum_i a_i y_i x_i, so the dual gradient G_i = y_i (w.x_i) - 1 costs
  // O(n p) to refresh after each maximal-violating-pair step.
  std::vector<double> alpha(n, 0.0);
  std::vector<double> w(x.cols, 0.0);
  std::vector<double> kdiag(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = x.data.data() + i * x.cols;
    double s = 0.0;
    for (std::size_t j = 0; j < x.cols; ++j) s += row[j] * row[j];
    kdiag[i] = s;
  }

  std::vector<double> grad(n, -1.0);  // alpha = 0 gives G_i = -1
  const auto refresh_grad = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = x.data.data() + i * x.cols;
      double s = 0.0;
      for (std::size_t j = 0; j < x.cols; ++j) s += w[j] * row[j];
      grad[i] = static_cast<double>(y_pm1[i]) * s - 1.0;
    }
  };

  LinearSvcModel m;
  m.c = cfg.c;
  std::size_t iter = 0;
  for (; iter < cfg.max_iter; ++iter) {
    // Maximal violating pair over v_t = -y_t G_t.
    double up_best = -std::numeric_limits<double>::infinity();
    double low_best = std::numeric_limits<double>::infinity();
    std::size_t i_up = n, i_low = n;
    for (std::size_t t = 0; t < n; ++t) {
      const double yt = static_cast<double>(y_pm1[t]);
      const double v = -yt * grad[t];
      const bool in_up = (yt > 0 && alpha[t] < cfg.c) || (yt < 0 && alpha[t] > 0.0);
      const bool in_low = (yt > 0 && alpha[t] > 0.0) || (yt < 0 && alpha[t] < cfg.c);
      if (in_up && v > up_best) {
        up_best = v;
        i_up = t;
      }
      if (in_low && v < low_best) {
        low_best = v;
        i_low = t;
      }
    }
    if (i_up == n || i_low == n || up_best - low_best < cfg.tol) break;

    const std::size_t i = i_up, j = i_low;
    const double yi = static_cast<double>(y_pm1[i]);
    const double yj = static_cast<double>(y_pm1[j]);
    const double* xi = x.data.data() + i * x.cols;
    const double* xj = x.data.data() + j * x.cols;
    double kij = 0.0;
    for (std::size_t k = 0; k < x.cols; ++k) kij += xi[k] * xj[k];
    const double quad = std::max(kdiag[i] + kdiag[j] - 2.0 * kij, 1e-12);

    // Step delta > 0 along d_alpha_i = y_i*delta, d_alpha_j = -y_j*delta
    // keeps y^T alpha fixed; the unconstrained optimum is the violation over
    // the curvature, then the box clips it.
    double delta = (up_best - low_best) / quad;
    delta = std::min(delta, yi > 0 ? cfg.c - alpha[i] : alpha[i]);
    delta = std::min(delta, yj > 0 ? alpha[j] : cfg.c - alpha[j]);
    if (delta <= 0.0) break;

    alpha[i] += yi * delta;
    alpha[j] -= yj * delta;
    // w change: (y_i d_alpha_i) x_i + (y_j d_alpha_j) x_j = delta (x_i - x_j).
    for (std::size_t k = 0; k < x.cols; ++k) w[k] += delta * (xi[k] - xj[k]);
    refresh_grad();
  }
  m.iterations = iter;

  // Bias from the KKT conditions:
  //   alpha_i = 0      ->  y_i (w.x_i + b) >= 1
  //   0 < alpha_i < c  ->  y_i (w.x_i + b) == 1
  //   alpha_i = c      ->  y_i (w.x_i + b) <= 1
  // Free support vectors pin b (averaged); otherwise take the midpoint of the
  // feasible interval.
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double yi = static_cast<double>(y_pm1[i]);
    const double* row = x.data.data() + i * x.cols;
    double s = 0.0;
    for (std::size_t k = 0; k < x.cols; ++k) s += w[k] * row[k];
    const double margin_b = yi - s;  // b putting sample i exactly on its margin
    const bool at_zero = alpha[i] <= 0.0;
    const bool at_c = alpha[i] >= cfg.c;
    if (!at_zero && !at_c) {
      free_sum += margin_b;
      ++free_count;
    } else if (at_zero) {
      // y_i (s + b) >= 1: for y=+1 this lower-bounds b, for y=-1 upper-bounds.
      if (yi > 0) lo = std::max(lo, margin_b);
      else hi = std::min(hi, margin_b);
    } else {
      if (yi > 0) hi = std::min(hi, margin_b);
      else lo = std::max(lo, margin_b);
    }
  }
  if (free_count > 0) {
    m.beta0 = free_sum / static_cast<double>(free_count);
  } else if (std::isfinite(lo) && std::isfinite(hi)) {
    m.beta0 = 0.5 * (lo + hi);
  } else if (std::isfinite(lo)) {
    m.beta0 = lo;
  } else if (std::isfinite(hi)) {
    m.beta0 = hi;
  } else {
    m.beta0 = 0.0;
  }
  m.beta = std::move(w);
  return m;
}

std::vector<double> linear_svc_decision(const LinearSvcModel& m, const DenseMatrix& x) {
  if (x.cols != m.beta.size())
    throw DimensionError("linear_svc_decision: feature count mismatch");
  std::vector<double> f(x.rows, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    double s = m.beta0;
    const double* row = x.data.data() + i * x.cols;
    for (std::size_t j = 0; j < x.cols; ++j) s += m.beta[j] * row[j];
    f[i] = s;
  }
  return f;
}

std::vector<int> linear_svc_predict(const LinearSvcModel& m, const DenseMatrix& x) {
  const auto f = linear_svc_decision(m, x);
  std::vector<int> out(f.size(), 0);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] >= 0.0 ? 1 : -1;
  return out;
}

}  // namespace ideolab
