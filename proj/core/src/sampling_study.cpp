#include "ideolab/sampling_study.hpp"

#include <algorithm>

#include "ideolab/errors.hpp"
#include "ideolab/eval.hpp"
#include "ideolab/linear.hpp"
#include "ideolab/rng.hpp"

namespace ideolab {

SamplingStudyResult restricted_sampling_study(const CsrMatrix& m,
                                              const std::vector<NineClass>& labels,
                                              const SamplingStudySpec& spec) {
  if (labels.size() != m.rows)
    throw LengthMismatch("sampling study: label count != matrix rows");
  if (spec.sizes.empty()) throw ConfigInvalid("sampling study: no sizes");
  for (const std::size_t k : spec.sizes)
    if (k == 0 || k > spec.min_unique)
      throw ConfigInvalid("sampling study: sizes must lie in [1, min_unique]");

  const TaskLabels tl = task_labels(labels, spec.task);
  if (tl.class_names.size() != 2)
    throw ConfigInvalid("sampling study: requires a binary task");

  SamplingStudyResult out;
  out.class_names = tl.class_names;
  out.sizes = spec.sizes;
  std::vector<int> y;
  for (std::size_t i = 0; i < tl.rows.size(); ++i) {
    const std::size_t row = tl.rows[i];
    const std::size_t nnz = m.row_ptr[row + 1] - m.row_ptr[row];
    if (nnz < spec.min_unique) continue;
    out.kept_rows.push_back(row);
    y.push_back(tl.y[i]);
  }
  const std::size_t n = out.kept_rows.size();
  if (n < 5) throw TooFewUsers("sampling study: fewer than 5 users retained");
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  if (*lo == *hi) throw TooFewUsers("sampling study: one class absent after filtering");

  // One split shared by every size: train = the 80% side, test = the rest.
  SplitSpec split_spec;
  split_spec.seed = derive_seed(spec.seed, 0);
  const SplitIndices parts = split(n, split_spec);
  std::vector<std::size_t> train_idx;
  train_idx.reserve(parts.train.size() + parts.val.size());
  std::merge(parts.train.begin(), parts.train.end(), parts.val.begin(), parts.val.end(),
             std::back_inserter(train_idx));
  out.n_train = train_idx.size();
  out.n_test = parts.test.size();

  LogisticConfig cfg;
  cfg.lambda = spec.lambda;
  cfg.weighting = spec.weighting;

  for (std::size_t si = 0; si < spec.sizes.size(); ++si) {
    const std::size_t k = spec.sizes[si];
    DenseMatrix x(n, m.cols);
    const std::uint64_t size_seed = derive_seed(spec.seed, 1 + si);
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t row = out.kept_rows[u];
      const std::size_t begin = m.row_ptr[row];
      const std::size_t nnz = m.row_ptr[row + 1] - begin;
      Rng rng = Rng::derived(size_seed, u);
      for (const std::size_t pick : rng.sample_without_replacement(nnz, k))
        x.at(u, m.col_idx[begin + pick]) = 1.0;
    }

    DenseMatrix x_train(train_idx.size(), m.cols);
    DenseMatrix x_test(parts.test.size(), m.cols);
    std::vector<int> y_train, y_test;
    for (std::size_t i = 0; i < train_idx.size(); ++i) {
      std::ranges::copy(x.row(train_idx[i]), x_train.row(i).begin());
      y_train.push_back(y[train_idx[i]]);
    }
    for (std::size_t i = 0; i < parts.test.size(); ++i) {
      std::ranges::copy(x.row(parts.test[i]), x_test.row(i).begin());
      y_test.push_back(y[parts.test[i]]);
    }

    const LogisticModel model = logistic_fit(x_train, y_train, cfg);
    out.accuracy.push_back(accuracy(y_test, logistic_predict(model, x_test)));
  }
  return out;
}

}  // namespace ideolab
