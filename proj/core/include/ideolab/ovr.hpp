#pragma once

#include <cstdint>
#include <vector>

#include "ideolab/errors.hpp"
#include "ideolab/forest.hpp"
#include "ideolab/linear.hpp"
#include "ideolab/parallel.hpp"
#include "ideolab/svc.hpp"

namespace ideolab {

// One-vs-rest wrapper: one binary submodel per class, prediction by argmax
// of the per-class scores. Scores are used raw (no cross-class
// normalization), so any positive rescaling leaves predictions unchanged.
template <typename SubModel>
struct OvrModel {
  std::vector<SubModel> submodels;  // submodels[k] separates class k from the rest
  std::size_t n_classes = 0;
};

// fitter(k) trains the binary model for class k vs rest. Submodels fit in
// parallel; any rng use inside fitter must derive from (seed, k).
template <typename Fitter>
auto ovr_fit(std::size_t n_classes, Fitter&& fitter, std::size_t n_threads = 1)
    -> OvrModel<decltype(fitter(std::size_t{0}))> {
  if (n_classes < 2) throw ConfigInvalid("ovr_fit: need at least two classes");
  OvrModel<decltype(fitter(std::size_t{0}))> model;
  model.n_classes = n_classes;
  model.submodels.resize(n_classes);
  parallel_for(n_classes, n_threads,
               [&](std::size_t k) { model.submodels[k] = fitter(k); });
  return model;
}

// scorer(submodel, x) returns one score per row; column k of the result.
template <typename SubModel, typename Scorer>
DenseMatrix ovr_scores(const OvrModel<SubModel>& m, const DenseMatrix& x,
                       Scorer&& scorer) {
  DenseMatrix s(x.rows, m.n_classes);
  for (std::size_t k = 0; k < m.n_classes; ++k) {
    const std::vector<double> col = scorer(m.submodels[k], x);
    if (col.size() != x.rows) throw LengthMismatch("ovr_scores: scorer length");
    for (std::size_t i = 0; i < x.rows; ++i) s.at(i, k) = col[i];
  }
  return s;
}

// Argmax per row; ties resolve to the smallest class id.
std::vector<int> ovr_argmax(const DenseMatrix& scores);

// 0/1 indicator of class k within y.
std::vector<int> one_vs_rest_labels(const std::vector<int>& y, std::size_t k);

using OvrLogisticModel = OvrModel<LogisticModel>;
using OvrForestModel = OvrModel<ForestModel>;
using OvrSvcModel = OvrModel<LinearSvcModel>;

// Submodel scores: logistic probability, forest vote fraction for the
// class, SVC signed decision value.
OvrLogisticModel ovr_logistic_fit(const DenseMatrix& x, const std::vector<int>& y,
                                  std::size_t n_classes, const LogisticConfig& cfg,
                                  std::size_t n_threads = 1);
DenseMatrix ovr_logistic_scores(const OvrLogisticModel& m, const DenseMatrix& x);

OvrForestModel ovr_forest_fit(const DenseMatrix& x, const std::vector<int>& y,
                              std::size_t n_classes, const ForestConfig& cfg);
DenseMatrix ovr_forest_scores(const OvrForestModel& m, const DenseMatrix& x);

OvrSvcModel ovr_svc_fit(const DenseMatrix& x, const std::vector<int>& y,
                        std::size_t n_classes, const SvcConfig& cfg,
                        std::size_t n_threads = 1);
DenseMatrix ovr_svc_scores(const OvrSvcModel& m, const DenseMatrix& x);

}  // namespace ideolab
