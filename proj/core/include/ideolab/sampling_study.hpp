#pragma once

#include <cstdint>
#include <vector>

#include "ideolab/csr.hpp"
#include "ideolab/labels.hpp"
#include "ideolab/pipeline.hpp"

namespace ideolab {

// How does accuracy degrade when each user is represented by only k of
// their subreddits? Users with fewer than min_unique distinct subreddits
// are dropped so every size is samplable for every retained user.
struct SamplingStudySpec {
  std::vector<std::size_t> sizes = {10, 25, 50, 100, 200};
  std::size_t min_unique = 200;
  Task task = Task::econ_binary;  // must be a binary task
  double lambda = 0.0;
  Weighting weighting = Weighting::uniform;
  std::uint64_t seed = 42;
};

struct SamplingStudyResult {
  std::vector<std::size_t> kept_rows;  // retained matrix rows, ascending
  std::vector<std::string> class_names;
  std::vector<std::size_t> sizes;
  std::vector<double> accuracy;  // test accuracy, parallel to sizes
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

// For each k: every retained user keeps k of their nonzero columns, drawn
// uniformly without replacement and set to 1, everything else 0; a logistic
// model fits on the 80% side of a split that is fixed across sizes, and the
// held-out accuracy is reported. The draw for (size, user) comes from its
// own derived stream, so results are independent of evaluation order.
SamplingStudyResult restricted_sampling_study(const CsrMatrix& m,
                                              const std::vector<NineClass>& labels,
                                              const SamplingStudySpec& spec);

}  // namespace ideolab
