#pragma once

#include <cstdint>
#include <vector>

#include "ideolab/tree.hpp"

namespace ideolab {

// SAMME multi-class AdaBoost over depth-1 stumps. Stage weights follow
// alpha = eta*ln((1-eps)/eps) + ln(K-1) with eps measured on the current
// normalized observation weights.
struct AdaBoostModel {
  std::vector<TreeModel> stumps;
  std::vector<double> alphas;  // parallel to stumps
  std::size_t n_classes = 0;
  std::size_t n_features = 0;
  double eta = 1.0;
  std::size_t rounds_requested = 0;
};

struct AdaBoostConfig {
  std::size_t rounds = 50;  // M
  double eta = 1.0;         // learning rate in (0, 1]
  Weighting weighting = Weighting::uniform;  // initial observation weights
  std::uint64_t seed = 0;   // reserved; stump search is exhaustive
  // Test hook: when set, receives the normalized observation weights after
  // every completed reweighting.
  std::vector<std::vector<double>>* weight_trace = nullptr;
};

AdaBoostModel adaboost_fit(const DenseMatrix& x, const std::vector<int>& y,
                           std::size_t n_classes, const AdaBoostConfig& cfg);

// Stage weight for a round: eta*ln((1-eps)/eps) + ln(K-1).
double adaboost_alpha(double eps, std::size_t n_classes, double eta);

// Row scores: sum of alpha over stumps voting each class.
DenseMatrix adaboost_scores(const AdaBoostModel& m, const DenseMatrix& x);
// Argmax of the weighted vote; ties resolve to the smallest class id.
std::vector<int> adaboost_predict(const AdaBoostModel& m, const DenseMatrix& x);

}  // namespace ideolab
