#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ideolab {

// Smooth objective with analytic gradient, minimized over R^d.
struct SmoothObjective {
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
};

struct OptimResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  bool hit_cap = false;  // some coordinate was clamped at the box bound
};

// L-BFGS (memory 10) with Armijo backtracking. Iterates are clamped into
// [-cap, cap] per coordinate; a clamp clears the curvature memory and marks
// hit_cap (the cap exists as a separation safeguard, not a real constraint).
OptimResult minimize_lbfgs(const SmoothObjective& f, std::vector<double> x0,
                           std::size_t max_iter, double tol, double cap);

// FISTA (accelerated proximal gradient) with backtracking line search for
//   f(x) + sum_j l1_weight[j] * |x_j|.
// l1_weight entries of 0 leave that coordinate unpenalized (intercepts).
// The same [-cap, cap] clamp is applied inside the proximal step.
OptimResult minimize_fista(const SmoothObjective& f, std::vector<double> x0,
                           std::span<const double> l1_weight, std::size_t max_iter,
                           double tol, double cap);

}  // namespace ideolab
