#pragma once

#include <cstddef>
#include <vector>

namespace ideolab {

// Baseline that assigns every observation to the plurality training class.
struct ZeroRModel {
  int majority = 0;
  std::vector<std::size_t> counts;  // training histogram, length n_classes
};

// Ties over counts resolve to the smallest class id (class ids are assigned
// in lexicographic name order upstream).
ZeroRModel zeror_fit(const std::vector<int>& y, std::size_t n_classes);
std::vector<int> zeror_predict(const ZeroRModel& m, std::size_t n);

}  // namespace ideolab
