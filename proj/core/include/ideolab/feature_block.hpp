#pragma once

#include <string>
#include <vector>

#include "ideolab/csr.hpp"
#include "ideolab/dense.hpp"

namespace ideolab {

enum class Provenance { raw, svd_scores, tfidf, embedding, combined };

const char* provenance_name(Provenance p);

// Dense design-matrix block, rows aligned with some user subset.
struct FeatureBlock {
  DenseMatrix x;
  Provenance provenance = Provenance::raw;
};

FeatureBlock block_from_csr(const CsrMatrix& m, Provenance p);

// Horizontal concatenation; all blocks must share a row count.
FeatureBlock hconcat(const std::vector<FeatureBlock>& blocks);

// Per-column min-max statistics learned from one (training) block.
struct RangeScaler {
  std::vector<double> mins;
  std::vector<double> maxs;

  static RangeScaler fit(const FeatureBlock& b);
  // (v - min) / (max - min); constant columns map to 0 everywhere. Rows seen
  // at fit time land in [0, 1]; unseen rows may fall outside, by design.
  FeatureBlock transform(const FeatureBlock& b) const;
};

// Concatenates and min-max scales with statistics from the blocks themselves.
// Pipelines that must avoid leakage fit a RangeScaler on training rows and
// transform the rest instead of calling this directly.
FeatureBlock scale_to_common_range(const std::vector<FeatureBlock>& blocks);

}  // namespace ideolab
