#include "ideolab/zeror.hpp"

#include "ideolab/errors.hpp"

namespace ideolab {

ZeroRModel zeror_fit(const std::vector<int>& y, std::size_t n_classes) {
  if (y.empty()) throw EmptyTrainingSet("zeror_fit: no labels");
  ZeroRModel m;
  m.counts.assign(n_classes, 0);
  for (const int c : y) {
    if (c < 0 || static_cast<std::size_t>(c) >= n_classes)
      throw UnknownLabel("zeror_fit: label outside [0, K)");
    ++m.counts[static_cast<std::size_t>(c)];
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < n_classes; ++k)
    if (m.counts[k] > m.counts[best]) best = k;
  m.majority = static_cast<int>(best);
  return m;
}

std::vector<int> zeror_predict(const ZeroRModel& m, std::size_t n) {
  return std::vector<int>(n, m.majority);
}

}  // namespace ideolab
