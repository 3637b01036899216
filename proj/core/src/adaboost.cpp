#include "ideolab/adaboost.hpp"

#include <cmath>

#include "ideolab/errors.hpp"

namespace ideolab {

double adaboost_alpha(double eps, std::size_t n_classes, double eta) {
  return eta * std::log((1.0 - eps) / eps) +
         std::log(static_cast<double>(n_classes) - 1.0);
}

AdaBoostModel adaboost_fit(const DenseMatrix& x, const std::vector<int>& y,
                           std::size_t n_classes, const AdaBoostConfig& cfg) {
  if (x.rows == 0) throw EmptyTrainingSet("adaboost_fit: no rows");
  if (y.size() != x.rows) throw LengthMismatch("adaboost_fit: y length != row count");
  if (cfg.rounds < 1) throw ConfigInvalid("adaboost_fit: rounds must be >= 1");
  if (!(cfg.eta > 0.0 && cfg.eta <= 1.0))
    throw ConfigInvalid("adaboost_fit: eta must be in (0, 1]");
  if (n_classes < 2) throw ConfigInvalid("adaboost_fit: need at least two classes");
  for (const int c : y)
    if (c < 0 || static_cast<std::size_t>(c) >= n_classes)
      throw UnknownLabel("adaboost_fit: label outside [0, K)");

  const std::size_t n = x.rows;
  std::vector<double> w = sample_weights(y, n_classes, cfg.weighting);
  double total = 0.0;
  for (const double v : w) total += v;
  for (double& v : w) v /= total;

  TreeConfig stump_cfg;
  stump_cfg.min_bucket = 1;
  stump_cfg.min_samples = 2;
  stump_cfg.max_depth = 1;  // stumps scan every feature once

  AdaBoostModel model;
  model.n_classes = n_classes;
  model.n_features = x.cols;
  model.eta = cfg.eta;
  model.rounds_requested = cfg.rounds;

  // alpha <= 0 exactly when eps >= 1 - 1/K at eta = 1; the guard uses the
  // error itself so every eta stops at the same boundary.
  const double guess_rate = 1.0 - 1.0 / static_cast<double>(n_classes);
  for (std::size_t m = 0; m < cfg.rounds; ++m) {
    TreeModel stump = tree_fit(x, y, n_classes, w, stump_cfg, nullptr);
    const auto pred = tree_predict(stump, x);
    double eps = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (pred[i] != y[i]) eps += w[i];

    if (eps <= 0.0) {
      // Perfect stump: keep it with unit stage weight and stop.
      model.stumps.push_back(std::move(stump));
      model.alphas.push_back(1.0);
      break;
    }
    if (eps >= guess_rate) break;  // no better than guessing: discard round

    const double alpha = adaboost_alpha(eps, n_classes, cfg.eta);
    model.stumps.push_back(std::move(stump));
    model.alphas.push_back(alpha);

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pred[i] != y[i]) w[i] *= std::exp(alpha);
      sum += w[i];
    }
    for (double& v : w) v /= sum;
    if (cfg.weight_trace != nullptr) cfg.weight_trace->push_back(w);
  }
  return model;
}

DenseMatrix adaboost_scores(const AdaBoostModel& m, const DenseMatrix& x) {
  if (x.cols != m.n_features)
    throw DimensionError("adaboost_scores: feature count mismatch");
  DenseMatrix scores(x.rows, m.n_classes);
  for (std::size_t t = 0; t < m.stumps.size(); ++t) {
    const auto pred = tree_predict(m.stumps[t], x);
    for (std::size_t i = 0; i < x.rows; ++i)
      scores.at(i, static_cast<std::size_t>(pred[i])) += m.alphas[t];
  }
  return scores;
}

std::vector<int> adaboost_predict(const AdaBoostModel& m, const DenseMatrix& x) {
  const DenseMatrix s = adaboost_scores(m, x);
  std::vector<int> out(x.rows, 0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < m.n_classes; ++k)
      if (s.at(i, k) > s.at(i, best)) best = k;
    out[i] = static_cast<int>(best);
  }
  return out;
}

}  // namespace ideolab
