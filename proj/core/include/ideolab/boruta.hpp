#pragma once

#include <cstdint>
#include <vector>

#include "ideolab/feature_block.hpp"
#include "ideolab/forest.hpp"

namespace ideolab {

// Single-round shadow-feature selection: train a forest on the real columns
// plus one permuted copy of each, keep the real features whose importance
// strictly exceeds the largest shadow importance.
struct BorutaResult {
  std::vector<std::size_t> selected;    // ascending real-feature indices
  std::vector<double> importances;      // per real feature
  std::vector<double> shadow_importances;  // parallel to the real columns
  double shadow_max = 0.0;
  std::uint64_t seed = 0;
};

// Width doubles: columns [0, p) are the originals, column p+j is an
// independent row permutation of column j drawn from stream (seed, j).
FeatureBlock make_shadows(const FeatureBlock& x, std::uint64_t seed);

// forest_cfg.seed is ignored; the forest trains on stream (seed, p) so one
// seed fixes the whole round.
BorutaResult boruta_select(const FeatureBlock& x, const std::vector<int>& y,
                           std::size_t n_classes, const ForestConfig& forest_cfg,
                           std::uint64_t seed);

}  // namespace ideolab
