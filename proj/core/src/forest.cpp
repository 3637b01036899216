#include "ideolab/forest.hpp"

#include <cmath>

#include "ideolab/errors.hpp"
#include "ideolab/parallel.hpp"

namespace ideolab {

ForestModel forest_fit(const DenseMatrix& x, const std::vector<int>& y,
                       std::size_t n_classes, const ForestConfig& cfg) {
  if (x.rows == 0) throw EmptyTrainingSet("forest_fit: no rows");
  if (y.size() != x.rows) throw LengthMismatch("forest_fit: y length != row count");
  if (cfg.n_trees == 0) throw ConfigInvalid("forest_fit: n_trees must be >= 1");
  for (const int c : y)
    if (c < 0 || static_cast<std::size_t>(c) >= n_classes)
      throw UnknownLabel("forest_fit: label outside [0, K)");

  std::size_t m_try = cfg.m_try
                          ? *cfg.m_try
                          : static_cast<std::size_t>(std::sqrt(static_cast<double>(x.cols)));
  if (m_try < 1) m_try = 1;
  if (m_try > x.cols) m_try = x.cols;

  TreeConfig tree_cfg;
  tree_cfg.min_bucket = cfg.min_bucket;
  tree_cfg.min_samples = cfg.min_samples;
  tree_cfg.max_depth = cfg.max_depth;
  tree_cfg.m_try = m_try;

  ForestModel model;
  model.n_classes = n_classes;
  model.n_features = x.cols;
  model.m_try = m_try;
  model.seed = cfg.seed;
  model.trees.resize(cfg.n_trees);

  const std::size_t n = x.rows;
  // Each tree draws its bootstrap and feature subsets from its own derived
  // stream, so the forest is byte-identical for any n_threads.
  parallel_for(cfg.n_trees, cfg.n_threads, [&](std::size_t t) {
    Rng rng = Rng::derived(cfg.seed, static_cast<std::uint64_t>(t));
    if (cfg.bootstrap) {
      DenseMatrix xb(n, x.cols);
      std::vector<int> yb(n);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src = rng.uniform_int(n);
        for (std::size_t j = 0; j < x.cols; ++j) xb.at(i, j) = x.at(src, j);
        yb[i] = y[src];
      }
      const auto w = sample_weights(yb, n_classes, cfg.weighting);
      model.trees[t] = tree_fit(xb, yb, n_classes, w, tree_cfg, &rng);
    } else {
      const auto w = sample_weights(y, n_classes, cfg.weighting);
      model.trees[t] = tree_fit(x, y, n_classes, w, tree_cfg, &rng);
    }
  });

  // Importance reduction stays serial so float accumulation order is fixed.
  model.importance.assign(x.cols, 0.0);
  for (const auto& tree : model.trees)
    for (std::size_t j = 0; j < x.cols; ++j) model.importance[j] += tree.importance[j];
  for (double& v : model.importance) v /= static_cast<double>(cfg.n_trees);
  return model;
}

DenseMatrix forest_predict_proba(const ForestModel& m, const DenseMatrix& x) {
  if (x.cols != m.n_features)
    throw DimensionError("forest_predict_proba: feature count mismatch");
  DenseMatrix votes(x.rows, m.n_classes);
  for (const auto& tree : m.trees) {
    const auto pred = tree_predict(tree, x);
    for (std::size_t i = 0; i < x.rows; ++i)
      votes.at(i, static_cast<std::size_t>(pred[i])) += 1.0;
  }
  const double denom = static_cast<double>(m.trees.size());
  for (double& v : votes.data) v /= denom;
  return votes;
}

std::vector<int> forest_predict(const ForestModel& m, const DenseMatrix& x) {
  const DenseMatrix p = forest_predict_proba(m, x);
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
