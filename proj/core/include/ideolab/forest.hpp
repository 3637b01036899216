#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ideolab/tree.hpp"

namespace ideolab {

// Random forest of CART trees. Each tree trains on a bootstrap of n rows
// drawn with replacement from its own derived rng stream, so results are
// identical for any thread count.
struct ForestModel {
  std::vector<TreeModel> trees;
  std::size_t n_classes = 0;
  std::size_t n_features = 0;
  std::size_t m_try = 0;
  std::uint64_t seed = 0;
  // Per-tree importances averaged over the forest.
  std::vector<double> importance;
};

struct ForestConfig {
  std::size_t n_trees = 100;
  std::size_t min_bucket = 7;
  std::size_t min_samples = 20;
  std::size_t max_depth = std::numeric_limits<std::size_t>::max();
  // Features per split; unset means floor(sqrt(n_features)), at least 1.
  std::optional<std::size_t> m_try;
  Weighting weighting = Weighting::uniform;
  std::uint64_t seed = 0;
  // Test hook: trains every tree on the full sample instead of a bootstrap.
  bool bootstrap = true;
  std::size_t n_threads = 1;
};

ForestModel forest_fit(const DenseMatrix& x, const std::vector<int>& y,
                       std::size_t n_classes, const ForestConfig& cfg);

// Fraction of trees voting for each class.
DenseMatrix forest_predict_proba(const ForestModel& m, const DenseMatrix& x);
// Plurality vote; ties resolve to the smallest class id.
std::vector<int> forest_predict(const ForestModel& m, const DenseMatrix& x);

}  // namespace ideolab
