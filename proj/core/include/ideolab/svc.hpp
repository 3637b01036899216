#pragma once

#include <span>
#include <vector>

#include "ideolab/dense.hpp"

namespace ideolab {

// Linear soft-margin SVM, y in {-1, +1}:
//   minimize 0.5*||beta||^2 + c * sum_i max(0, 1 - y_i*(beta^T x_i + beta0)).
// The intercept is unregularized. Solved exactly in the dual by a maximal-
// violating-pair coordinate method, deterministic and tolerance-driven.
struct LinearSvcModel {
  double beta0 = 0.0;
  std::vector<double> beta;  // p
  double c = 1.0;
  std::size_t iterations = 0;
};

struct SvcConfig {
  double c = 1.0;
  double tol = 1e-10;  // maximal KKT violation allowed at exit
  std::size_t max_iter = 1000000;
};

LinearSvcModel linear_svc_fit(const DenseMatrix& x, const std::vector<int>& y_pm1,
                              const SvcConfig& cfg = {});

std::vector<double> linear_svc_decision(const LinearSvcModel& m, const DenseMatrix& x);
std::vector<int> linear_svc_predict(const LinearSvcModel& m, const DenseMatrix& x);

// Primal objective value, exposed for optimizer-oracle comparisons.
double svc_objective(const DenseMatrix& x, const std::vector<int>& y_pm1, double beta0,
                     std::span<const double> beta, double c);

// Smooth part of the primal objective (0.5*||beta||^2) gradient is trivial;
// for gradient checks away from hinge kinks the full subgradient is smooth:
std::vector<double> svc_subgradient(const DenseMatrix& x, const std::vector<int>& y_pm1,
                                    double beta0, std::span<const double> beta, double c);

}  // namespace ideolab
