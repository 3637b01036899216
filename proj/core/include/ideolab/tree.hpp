#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ideolab/dense.hpp"
#include "ideolab/rng.hpp"
#include "ideolab/weighting.hpp"

namespace ideolab {

// CART-style classification tree splitting on weighted Gini impurity.
// A split sends x[feature] < threshold left and x[feature] >= threshold
// right; thresholds sit at midpoints of consecutive distinct sorted values.
struct TreeModel {
  struct Node {
    int feature = -1;        // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::vector<double> class_weight;  // weighted class histogram at the node
  };
  std::vector<Node> nodes;  // nodes[0] is the root
  std::size_t n_classes = 0;
  std::size_t n_features = 0;
  std::size_t min_bucket = 0;
  std::size_t min_samples = 0;
  // Summed weighted impurity decrease attributed to each feature.
  std::vector<double> importance;
};

struct TreeConfig {
  std::size_t min_bucket = 7;    // minimum raw samples per side of a split
  std::size_t min_samples = 20;  // minimum raw samples to attempt a split
  std::size_t max_depth = std::numeric_limits<std::size_t>::max();
  // Features examined per split; unset means all. Sampling consumes rng.
  std::optional<std::size_t> m_try;
};

// sample_weight may be empty (treated as all-ones). rng is only touched when
// cfg.m_try is set. Ties in split quality resolve to the first candidate in
// (feature, threshold) order; argmax ties at leaves to the smallest class id.
TreeModel tree_fit(const DenseMatrix& x, const std::vector<int>& y, std::size_t n_classes,
                   const std::vector<double>& sample_weight, const TreeConfig& cfg,
                   Rng* rng = nullptr);

// Convenience wrapper deriving weights from a Weighting policy.
TreeModel tree_fit(const DenseMatrix& x, const std::vector<int>& y, std::size_t n_classes,
                   Weighting weighting, const TreeConfig& cfg, Rng* rng = nullptr);

std::vector<int> tree_predict(const TreeModel& m, const DenseMatrix& x);
// Normalized leaf histogram for each row.
DenseMatrix tree_predict_proba(const TreeModel& m, const DenseMatrix& x);

// Gini impurity of a weighted class histogram: 1 - sum_k (w_k/W)^2.
double gini_impurity(const std::vector<double>& class_weight);

}  // namespace ideolab
