#pragma once

#include <string>
#include <vector>

#include "ideolab/errors.hpp"

namespace ideolab {

enum class Weighting { uniform, balanced };

inline const char* name(Weighting w) {
  return w == Weighting::uniform ? "uniform" : "balanced";
}

inline Weighting parse_weighting(const std::string& s) {
  if (s == "uniform") return Weighting::uniform;
  if (s == "balanced") return Weighting::balanced;
  throw ConfigInvalid("unknown weighting: \"" + s + "\"");
}

// Per-sample weights. uniform: all 1. balanced: w_i = n / n_{class(i)}, so
// each class's weight total equals n and classes contribute equally.
inline std::vector<double> sample_weights(const std::vector<int>& y,
                                          std::size_t n_classes, Weighting w) {
  const std::size_t n = y.size();
  std::vector<double> out(n, 1.0);
  if (w == Weighting::uniform || n == 0) return out;
  std::vector<std::size_t> counts(n_classes, 0);
  for (const int c : y) ++counts[static_cast<std::size_t>(c)];
  std::vector<double> per_class(n_classes, 0.0);
  for (std::size_t k = 0; k < n_classes; ++k)
    if (counts[k] > 0)
      per_class[k] = static_cast<double>(n) / static_cast<double>(counts[k]);
  for (std::size_t i = 0; i < n; ++i) out[i] = per_class[static_cast<std::size_t>(y[i])];
  return out;
}

}  // namespace ideolab
