#include "ideolab/boruta.hpp"

#include "ideolab/errors.hpp"
#include "ideolab/rng.hpp"

namespace ideolab {

FeatureBlock make_shadows(const FeatureBlock& x, std::uint64_t seed) {
  const std::size_t n = x.x.rows, p = x.x.cols;
  if (p == 0) throw DimensionError("make_shadows: no columns");
  DenseMatrix out(n, 2 * p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) out.at(i, j) = x.x.at(i, j);
  for (std::size_t j = 0; j < p; ++j) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(j));
    const auto perm = rng.permutation(n);
    for (std::size_t i = 0; i < n; ++i) out.at(i, p + j) = x.x.at(perm[i], j);
  }
  return FeatureBlock{std::move(out), x.provenance};
}

BorutaResult boruta_select(const FeatureBlock& x, const std::vector<int>& y,
                           std::size_t n_classes, const ForestConfig& forest_cfg,
                           std::uint64_t seed) {
  const std::size_t p = x.x.cols;
  const FeatureBlock widened = make_shadows(x, seed);

  ForestConfig cfg = forest_cfg;
  cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(p));
  const ForestModel forest = forest_fit(widened.x, y, n_classes, cfg);

  BorutaResult result;
  result.seed = seed;
  result.importances.assign(forest.importance.begin(),
                            forest.importance.begin() + static_cast<std::ptrdiff_t>(p));
  result.shadow_importances.assign(
      forest.importance.begin() + static_cast<std::ptrdiff_t>(p), forest.importance.end());
  result.shadow_max = 0.0;
  for (const double v : result.shadow_importances)
    if (v > result.shadow_max) result.shadow_max = v;
  for (std::size_t j = 0; j < p; ++j)
    if (result.importances[j] > result.shadow_max) result.selected.push_back(j);
  return result;
}

}  // namespace ideolab
