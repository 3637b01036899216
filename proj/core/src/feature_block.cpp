#include "ideolab/feature_block.hpp"

#include "ideolab/errors.hpp"

namespace ideolab {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::raw: return "raw";
    case Provenance::svd_scores: return "svd_scores";
    case Provenance::tfidf: return "tfidf";
    case Provenance::embedding: return "embedding";
    case Provenance::combined: return "combined";
  }
  return "raw";
}

FeatureBlock block_from_csr(const CsrMatrix& m, Provenance p) {
  FeatureBlock b;
  b.provenance = p;
  b.x = DenseMatrix(m.rows, m.cols);
  b.x.data = m.to_dense();
  return b;
}

FeatureBlock hconcat(const std::vector<FeatureBlock>& blocks) {
  if (blocks.empty()) throw DimensionError("hconcat: no blocks");
  const std::size_t n = blocks[0].x.rows;
  std::size_t width = 0;
  for (const auto& b : blocks) {
    if (b.x.rows != n) throw LengthMismatch("hconcat: blocks have differing row counts");
    width += b.x.cols;
  }
  FeatureBlock out;
  out.provenance = blocks.size() == 1 ? blocks[0].provenance : Provenance::combined;
  out.x = DenseMatrix(n, width);
  for (std::size_t r = 0; r < n; ++r) {
    double* dst = out.x.data.data() + r * width;
    for (const auto& b : blocks) {
      const double* src = b.x.data.data() + r * b.x.cols;
      for (std::size_t c = 0; c < b.x.cols; ++c) *dst++ = src[c];
    }
  }
  return out;
}

RangeScaler RangeScaler::fit(const FeatureBlock& b) {
  if (b.x.rows == 0) throw EmptyTrainingSet("RangeScaler::fit: no rows");
  RangeScaler s;
  s.mins.assign(b.x.cols, 0.0);
  s.maxs.assign(b.x.cols, 0.0);
  for (std::size_t c = 0; c < b.x.cols; ++c) {
    double lo = b.x.at(0, c), hi = b.x.at(0, c);
    for (std::size_t r = 1; r < b.x.rows; ++r) {
      const double v = b.x.at(r, c);
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    s.mins[c] = lo;
    s.maxs[c] = hi;
  }
  return s;
}

FeatureBlock RangeScaler::transform(const FeatureBlock& b) const {
  if (b.x.cols != mins.size())
    throw DimensionError("RangeScaler::transform: column count mismatch");
  FeatureBlock out;
  out.provenance = b.provenance;
  out.x = DenseMatrix(b.x.rows, b.x.cols);
  for (std::size_t c = 0; c < b.x.cols; ++c) {
    const double span = maxs[c] - mins[c];
    if (span == 0.0) continue;  // constant column -> all zeros
    const double inv = 1.0 / span;
    for (std::size_t r = 0; r < b.x.rows; ++r)
      out.x.at(r, c) = (b.x.at(r, c) - mins[c]) * inv;
  }
  return out;
}

FeatureBlock scale_to_common_range(const std::vector<FeatureBlock>& blocks) {
  FeatureBlock joined = hconcat(blocks);
  const RangeScaler s = RangeScaler::fit(joined);
  FeatureBlock out = s.transform(joined);
  out.provenance = Provenance::combined;
  return out;
}

}  // namespace ideolab
