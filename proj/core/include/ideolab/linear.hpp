#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ideolab/dense.hpp"
#include "ideolab/weighting.hpp"

namespace ideolab {

// Binary logistic regression, y in {0, 1}. beta[0] is the intercept; the l1
// penalty lambda * sum_{j>=1} |beta_j| never touches it. The objective is the
// mean weighted negative log-likelihood plus the penalty, minimized.
struct LogisticModel {
  std::vector<double> beta;  // p + 1
  double lambda = 0.0;
  Weighting weighting = Weighting::uniform;
  bool separable_warning = false;  // some |beta_j| hit the cap during fitting
  std::size_t iterations = 0;
};

struct LogisticConfig {
  double lambda = 0.0;
  Weighting weighting = Weighting::uniform;
  double tol = 1e-10;
  std::size_t max_iter = 5000;
  double coef_cap = 30.0;
};

LogisticModel logistic_fit(const DenseMatrix& x, const std::vector<int>& y,
                           const LogisticConfig& cfg = {});

std::vector<double> logistic_predict_proba(const LogisticModel& m, const DenseMatrix& x);
std::vector<int> logistic_predict(const LogisticModel& m, const DenseMatrix& x);

// Objective and smooth-part gradient, exposed for finite-difference checks
// and optimizer oracles. beta has p+1 entries; weights w has n entries.
double logistic_objective(const DenseMatrix& x, const std::vector<int>& y,
                          std::span<const double> w, std::span<const double> beta,
                          double lambda);
std::vector<double> logistic_smooth_gradient(const DenseMatrix& x, const std::vector<int>& y,
                                             std::span<const double> w,
                                             std::span<const double> beta);

// Multinomial logistic regression with class 0 as the reference: theta is
// (K-1) x (p+1), class 0's implicit coefficient vector is zero.
struct MultinomialModel {
  DenseMatrix theta;  // (K-1) x (p+1)
  std::size_t n_classes = 0;
  double lambda = 0.0;
  Weighting weighting = Weighting::uniform;
  bool separable_warning = false;
  std::size_t iterations = 0;
};

struct MultinomialConfig {
  double lambda = 0.0;
  Weighting weighting = Weighting::uniform;
  double tol = 1e-10;
  std::size_t max_iter = 5000;
  double coef_cap = 30.0;
};

MultinomialModel multinomial_fit(const DenseMatrix& x, const std::vector<int>& y,
                                 std::size_t n_classes, const MultinomialConfig& cfg = {});

DenseMatrix multinomial_predict_proba(const MultinomialModel& m, const DenseMatrix& x);
std::vector<int> multinomial_predict(const MultinomialModel& m, const DenseMatrix& x);

double multinomial_objective(const DenseMatrix& x, const std::vector<int>& y,
                             std::span<const double> w, std::size_t n_classes,
                             std::span<const double> theta_flat, double lambda);
std::vector<double> multinomial_smooth_gradient(const DenseMatrix& x, const std::vector<int>& y,
                                                std::span<const double> w, std::size_t n_classes,
                                                std::span<const double> theta_flat);

}  // namespace ideolab
