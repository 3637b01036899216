#include "ideolab/linear.hpp"

#include <algorithm>
#include <cmath>

#include "ideolab/errors.hpp"
#include "ideolab/optim.hpp"

namespace ideolab {

namespace {

void check_finite(const DenseMatrix& x) {
  for (const double v : x.data)
    if (!std::isfinite(v)) throw NonFinite("design matrix contains a non-finite value");
}

void check_xy(const DenseMatrix& x, const std::vector<int>& y) {
  if (x.rows == 0) throw EmptyTrainingSet("fit: no rows");
  if (y.size() != x.rows) throw LengthMismatch("fit: y length != row count");
  check_finite(x);
}

// ln(1 + e^z), overflow-safe.
double log1pexp(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double row_score(const DenseMatrix& x, std::size_t i, std::span<const double> beta) {
  double z = beta[0];
  const double* row = x.data.data() + i * x.cols;
  for (std::size_t j = 0; j < x.cols; ++j) z += beta[j + 1] * row[j];
  return z;
}

}  // namespace

double logistic_objective(const DenseMatrix& x, const std::vector<int>& y,
                          std::span<const double> w, std::span<const double> beta,
                          double lambda) {
  const double n = static_cast<double>(x.rows);
  double nll = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double z = row_score(x, i, beta);
    nll += w[i] * (log1pexp(z) - static_cast<double>(y[i]) * z);
  }
  double pen = 0.0;
  for (std::size_t j = 1; j < beta.size(); ++j) pen += std::abs(beta[j]);
  return nll / n + lambda * pen;
}

std::vector<double> logistic_smooth_gradient(const DenseMatrix& x, const std::vector<int>& y,
                                             std::span<const double> w,
                                             std::span<const double> beta) {
  const double inv_n = 1.0 / static_cast<double>(x.rows);
  std::vector<double> g(x.cols + 1, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double z = row_score(x, i, beta);
    const double p = 1.0 / (1.0 + std::exp(-z));
    const double r = w[i] * (p - static_cast<double>(y[i]));
    g[0] += r;
    const double* row = x.data.data() + i * x.cols;
    for (std::size_t j = 0; j < x.cols; ++j) g[j + 1] += r * row[j];
  }
  for (double& v : g) v *= inv_n;
  return g;
}

LogisticModel logistic_fit(const DenseMatrix& x, const std::vector<int>& y,
                           const LogisticConfig& cfg) {
  check_xy(x, y);
  bool has0 = false, has1 = false;
  for (const int v : y) {
    if (v == 0) has0 = true;
    else if (v == 1) has1 = true;
    else throw UnknownLabel("logistic_fit: labels must be 0 or 1");
  }
  if (!has0 || !has1) throw SingleClass("logistic_fit: both classes must be present");
  if (cfg.lambda < 0.0) throw ConfigInvalid("logistic_fit: lambda must be >= 0");

  const std::vector<double> w = sample_weights(y, 2, cfg.weighting);
  SmoothObjective obj;
  obj.value = [&](std::span<const double> b) { return logistic_objective(x, y, w, b, 0.0); };
  obj.gradient = [&](std::span<const double> b, std::span<double> g) {
    const auto full = logistic_smooth_gradient(x, y, w, b);
    std::copy(full.begin(), full.end(), g.begin());
  };

  std::vector<double> b0(x.cols + 1, 0.0);
  OptimResult r;
  if (cfg.lambda == 0.0) {
    r = minimize_lbfgs(obj, std::move(b0), cfg.max_iter, cfg.tol, cfg.coef_cap);
  } else {
    std::vector<double> l1(x.cols + 1, cfg.lambda);
    l1[0] = 0.0;
    r = minimize_fista(obj, std::move(b0), l1, cfg.max_iter, cfg.tol, cfg.coef_cap);
  }

  LogisticModel m;
  m.beta = std::move(r.x);
  m.lambda = cfg.lambda;
  m.weighting = cfg.weighting;
  m.separable_warning = r.hit_cap;
  m.iterations = r.iterations;
  return m;
}

std::vector<double> logistic_predict_proba(const LogisticModel& m, const DenseMatrix& x) {
  if (x.cols + 1 != m.beta.size())
    throw DimensionError("logistic_predict_proba: feature count mismatch");
  std::vector<double> p(x.rows, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i)
    p[i] = 1.0 / (1.0 + std::exp(-row_score(x, i, m.beta)));
  return p;
}

std::vector<int> logistic_predict(const LogisticModel& m, const DenseMatrix& x) {
  const auto p = logistic_predict_proba(m, x);
  std::vector<int> out(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] > 0.5 ? 1 : 0;
  return out;
}

namespace {

// Scores for classes 1..K-1 of row i (class 0's score is 0).
void class_scores(const DenseMatrix& x, std::size_t i, std::size_t n_classes,
                  std::span<const double> theta, std::span<double> s) {
  const std::size_t pp1 = x.cols + 1;
  const double* row = x.data.data() + i * x.cols;
  for (std::size_t k = 0; k + 1 < n_classes; ++k) {
    const double* b = theta.data() + k * pp1;
    double z = b[0];
    for (std::size_t j = 0; j < x.cols; ++j) z += b[j + 1] * row[j];
    s[k] = z;
  }
}

}  // namespace

double multinomial_objective(const DenseMatrix& x, const std::vector<int>& y,
                             std::span<const double> w, std::size_t n_classes,
                             std::span<const double> theta_flat, double lambda) {
  const double n = static_cast<double>(x.rows);
  const std::size_t pp1 = x.cols + 1;
  std::vector<double> s(n_classes - 1, 0.0);
  double nll = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    class_scores(x, i, n_classes, theta_flat, s);
    double mx = 0.0;  // class 0's score
    for (const double z : s) mx = std::max(mx, z);
    double sum = std::exp(-mx);  // class 0 term
    for (const double z : s) sum += std::exp(z - mx);
    const double lse = mx + std::log(sum);
    const double sy = y[i] == 0 ? 0.0 : s[static_cast<std::size_t>(y[i]) - 1];
    nll += w[i] * (lse - sy);
  }
  double pen = 0.0;
  for (std::size_t k = 0; k + 1 < n_classes; ++k)
    for (std::size_t j = 1; j < pp1; ++j) pen += std::abs(theta_flat[k * pp1 + j]);
  return nll / n + lambda * pen;
}

std::vector<double> multinomial_smooth_gradient(const DenseMatrix& x, const std::vector<int>& y,
                                                std::span<const double> w, std::size_t n_classes,
                                                std::span<const double> theta_flat) {
  const double inv_n = 1.0 / static_cast<double>(x.rows);
  const std::size_t pp1 = x.cols + 1;
  std::vector<double> g((n_classes - 1) * pp1, 0.0);
  std::vector<double> s(n_classes - 1, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    class_scores(x, i, n_classes, theta_flat, s);
    double mx = 0.0;
    for (const double z : s) mx = std::max(mx, z);
    double sum = std::exp(-mx);
    for (const double z : s) sum += std::exp(z - mx);
    const double* row = x.data.data() + i * x.cols;
    for (std::size_t k = 0; k + 1 < n_classes; ++k) {
      const double pk = std::exp(s[k] - mx) / sum;
      const double r = w[i] * (pk - (y[i] == static_cast<int>(k) + 1 ? 1.0 : 0.0));
      double* gk = g.data() + k * pp1;
      gk[0] += r;
      for (std::size_t j = 0; j < x.cols; ++j) gk[j + 1] += r * row[j];
    }
  }
  for (double& v : g) v *= inv_n;
  return g;
}

MultinomialModel multinomial_fit(const DenseMatrix& x, const std::vector<int>& y,
                                 std::size_t n_classes, const MultinomialConfig& cfg) {
  check_xy(x, y);
  if (n_classes < 2) throw ConfigInvalid("multinomial_fit: need K >= 2");
  std::vector<bool> seen(n_classes, false);
  for (const int v : y) {
    if (v < 0 || static_cast<std::size_t>(v) >= n_classes)
      throw UnknownLabel("multinomial_fit: label outside [0, K)");
    seen[static_cast<std::size_t>(v)] = true;
  }
  for (std::size_t k = 0; k < n_classes; ++k)
    if (!seen[k])
      throw MissingClass("multinomial_fit: class " + std::to_string(k) + " absent from y");
  if (cfg.lambda < 0.0) throw ConfigInvalid("multinomial_fit: lambda must be >= 0");

  const std::vector<double> w = sample_weights(y, n_classes, cfg.weighting);
  const std::size_t pp1 = x.cols + 1;
  SmoothObjective obj;
  obj.value = [&](std::span<const double> th) {
    return multinomial_objective(x, y, w, n_classes, th, 0.0);
  };
  obj.gradient = [&](std::span<const double> th, std::span<double> g) {
    const auto full = multinomial_smooth_gradient(x, y, w, n_classes, th);
    std::copy(full.begin(), full.end(), g.begin());
  };

  std::vector<double> th0((n_classes - 1) * pp1, 0.0);
  OptimResult r;
  if (cfg.lambda == 0.0) {
    r = minimize_lbfgs(obj, std::move(th0), cfg.max_iter, cfg.tol, cfg.coef_cap);
  } else {
    std::vector<double> l1((n_classes - 1) * pp1, cfg.lambda);
    for (std::size_t k = 0; k + 1 < n_classes; ++k) l1[k * pp1] = 0.0;
    r = minimize_fista(obj, std::move(th0), l1, cfg.max_iter, cfg.tol, cfg.coef_cap);
  }

  MultinomialModel m;
  m.theta = DenseMatrix(n_classes - 1, pp1);
  m.theta.data = std::move(r.x);
  m.n_classes = n_classes;
  m.lambda = cfg.lambda;
  m.weighting = cfg.weighting;
  m.separable_warning = r.hit_cap;
  m.iterations = r.iterations;
  return m;
}

DenseMatrix multinomial_predict_proba(const MultinomialModel& m, const DenseMatrix& x) {
  if (x.cols + 1 != m.theta.cols)
    throw DimensionError("multinomial_predict_proba: feature count mismatch");
  DenseMatrix p(x.rows, m.n_classes);
  std::vector<double> s(m.n_classes - 1, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    class_scores(x, i, m.n_classes, m.theta.data, s);
    double mx = 0.0;
    for (const double z : s) mx = std::max(mx, z);
    double sum = std::exp(-mx);
    for (const double z : s) sum += std::exp(z - mx);
    p.at(i, 0) = std::exp(-mx) / sum;
    for (std::size_t k = 1; k < m.n_classes; ++k)
      p.at(i, k) = std::exp(s[k - 1] - mx) / sum;
  }
  return p;
}

std::vector<int> multinomial_predict(const MultinomialModel& m, const DenseMatrix& x) {
  const DenseMatrix p = multinomial_predict_proba(m, x);
  std::vector<int> out(x.rows, 0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < m.n_classes; ++k)
      if (p.at(i, k) > p.at(i, best)) best = k;
    out[i] = static_cast<int>(best);
  }
  return out;
}

}  // namespace ideolab
