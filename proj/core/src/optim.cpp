#include "ideolab/optim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace ideolab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(std::span<const double> a) {
  double m = 0.0;
  for (const double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

OptimResult minimize_lbfgs(const SmoothObjective& f, std::vector<double> x0,
                           std::size_t max_iter, double tol, double cap) {
  const std::size_t d = x0.size();
  constexpr std::size_t kMemory = 10;
  OptimResult res;
  res.x = std::move(x0);

  std::vector<double> g(d, 0.0), g_new(d, 0.0), x_new(d, 0.0), dir(d, 0.0);
  std::deque<std::pair<std::vector<double>, std::vector<double>>> mem;  // (s, y)
  f.gradient(res.x, g);
  double fx = f.value(res.x);
  std::size_t small_changes = 0;

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    res.iterations = iter + 1;
    if (inf_norm(g) < tol) break;

    // Two-loop recursion for d = -H g.
    dir.assign(g.begin(), g.end());
    std::vector<double> alpha(mem.size(), 0.0);
    for (std::size_t i = mem.size(); i-- > 0;) {
      const auto& [s, yv] = mem[i];
      const double rho = 1.0 / dot(s, yv);
      alpha[i] = rho * dot(s, dir);
      for (std::size_t j = 0; j < d; ++j) dir[j] -= alpha[i] * yv[j];
    }
    if (!mem.empty()) {
      const auto& [s, yv] = mem.back();
      const double gamma = dot(s, yv) / dot(yv, yv);
      for (double& v : dir) v *= gamma;
    }
    for (std::size_t i = 0; i < mem.size(); ++i) {
      const auto& [s, yv] = mem[i];
      const double rho = 1.0 / dot(s, yv);
      const double beta = rho * dot(yv, dir);
      for (std::size_t j = 0; j < d; ++j) dir[j] += s[j] * (alpha[i] - beta);
    }
    for (double& v : dir) v = -v;

    double gd = dot(g, dir);
    if (!(gd < 0.0)) {  // not a descent direction; fall back to steepest
      mem.clear();
      for (std::size_t j = 0; j < d; ++j) dir[j] = -g[j];
      gd = dot(g, dir);
      if (!(gd < 0.0)) break;
    }

    // Armijo backtracking.
    double step = 1.0;
    double f_trial = 0.0;
    bool ok = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t j = 0; j < d; ++j) x_new[j] = res.x[j] + step * dir[j];
      f_trial = f.value(x_new);
      if (std::isfinite(f_trial) && f_trial <= fx + 1e-4 * step * gd) {
        ok = true;
        break;
      }
      step *= 0.5;
    }
    if (!ok) break;

    bool clamped = false;
    for (std::size_t j = 0; j < d; ++j) {
      const double c = std::clamp(x_new[j], -cap, cap);
      if (c != x_new[j]) {
        x_new[j] = c;
        clamped = true;
      }
    }
    if (clamped) {
      f_trial = f.value(x_new);
      res.hit_cap = true;
    }
    f.gradient(x_new, g_new);

    if (clamped) {
      mem.clear();  // curvature pairs invalid across a projection
    } else {
      std::vector<double> s(d), yv(d);
      for (std::size_t j = 0; j < d; ++j) {
        s[j] = x_new[j] - res.x[j];
        yv[j] = g_new[j] - g[j];
      }
      if (dot(s, yv) > 1e-12) {
        mem.emplace_back(std::move(s), std::move(yv));
        if (mem.size() > kMemory) mem.pop_front();
      }
    }

    const double change = std::abs(f_trial - fx);
    res.x.swap(x_new);
    g.swap(g_new);
    fx = f_trial;
    if (change < tol * std::max(1.0, std::abs(fx))) {
      if (++small_changes >= 2) break;
    } else {
      small_changes = 0;
    }
  }
  res.value = fx;
  return res;
}

OptimResult minimize_fista(const SmoothObjective& f, std::vector<double> x0,
                           std::span<const double> l1_weight, std::size_t max_iter,
                           double tol, double cap) {
  const std::size_t d = x0.size();
  OptimResult res;
  res.x = std::move(x0);

  const auto penalty = [&](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += l1_weight[j] * std::abs(x[j]);
    return s;
  };
  const auto prox = [&](std::span<const double> v, double inv_l, std::span<double> out) {
    for (std::size_t j = 0; j < d; ++j) {
      const double thr = l1_weight[j] * inv_l;
      double z = v[j];
      z = z > thr ? z - thr : (z < -thr ? z + thr : 0.0);
      out[j] = std::clamp(z, -cap, cap);
    }
  };

  std::vector<double> z = res.x, g(d, 0.0), x_new(d, 0.0), v(d, 0.0);
  double big_f = f.value(res.x) + penalty(res.x);
  double lips = 1.0;
  double t = 1.0;
  std::size_t small_changes = 0;

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    res.iterations = iter + 1;
    f.gradient(z, g);
    const double fz = f.value(z);

    double f_new = 0.0;
    for (int bt = 0; bt < 120; ++bt) {
      const double inv_l = 1.0 / lips;
      for (std::size_t j = 0; j < d; ++j) v[j] = z[j] - inv_l * g[j];
      prox(v, inv_l, x_new);
      double lin = 0.0, quad = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double diff = x_new[j] - z[j];
        lin += g[j] * diff;
        quad += diff * diff;
      }
      f_new = f.value(x_new);
      const double bound = fz + lin + 0.5 * lips * quad;
      if (std::isfinite(f_new) && f_new <= bound + 1e-12 * std::abs(bound)) break;
      lips *= 2.0;
    }
    const double big_f_new = f_new + penalty(x_new);

    if (big_f_new > big_f && iter > 0) {
      // Momentum overshoot: restart from the last accepted point.
      z = res.x;
      t = 1.0;
      continue;
    }

    const double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    for (std::size_t j = 0; j < d; ++j)
      z[j] = x_new[j] + ((t - 1.0) / t_new) * (x_new[j] - res.x[j]);
    const double change = std::abs(big_f_new - big_f);
    res.x = x_new;
    big_f = big_f_new;
    t = t_new;
    lips = std::max(lips * 0.9, 1e-10);

    if (change < tol * std::max(1.0, std::abs(big_f))) {
      if (++small_changes >= 3) break;
    } else {
      small_changes = 0;
    }
  }
  for (const double xv : res.x)
    if (std::abs(xv) >= cap) res.hit_cap = true;
  res.value = big_f;
  return res;
}

}  // namespace ideolab
