#include "ideolab/ovr.hpp"

#include "ideolab/rng.hpp"

namespace ideolab {

std::vector<int> ovr_argmax(const DenseMatrix& scores) {
  std::vector<int> out(scores.rows, 0);
  for (std::size_t i = 0; i < scores.rows; ++i) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < scores.cols; ++k)
      if (scores.at(i, k) > scores.at(i, best)) best = k;
    out[i] = static_cast<int>(best);
  }
  return out;
}

std::vector<int> one_vs_rest_labels(const std::vector<int>& y, std::size_t k) {
  std::vector<int> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    out[i] = y[i] == static_cast<int>(k) ? 1 : 0;
  return out;
}

OvrLogisticModel ovr_logistic_fit(const DenseMatrix& x, const std::vector<int>& y,
                                  std::size_t n_classes, const LogisticConfig& cfg,
                                  std::size_t n_threads) {
  return ovr_fit(
      n_classes,
      [&](std::size_t k) { return logistic_fit(x, one_vs_rest_labels(y, k), cfg); },
      n_threads);
}

DenseMatrix ovr_logistic_scores(const OvrLogisticModel& m, const DenseMatrix& x) {
  return ovr_scores(m, x, [](const LogisticModel& sub, const DenseMatrix& xx) {
    return logistic_predict_proba(sub, xx);
  });
}

OvrForestModel ovr_forest_fit(const DenseMatrix& x, const std::vector<int>& y,
                              std::size_t n_classes, const ForestConfig& cfg) {
  // Classes fit serially; each submodel's forest parallelizes its own trees
  // and draws from a stream derived from (seed, class).
  return ovr_fit(n_classes, [&](std::size_t k) {
    ForestConfig sub = cfg;
    sub.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(k));
    return forest_fit(x, one_vs_rest_labels(y, k), 2, sub);
  });
}

DenseMatrix ovr_forest_scores(const OvrForestModel& m, const DenseMatrix& x) {
  return ovr_scores(m, x, [](const ForestModel& sub, const DenseMatrix& xx) {
    const DenseMatrix p = forest_predict_proba(sub, xx);
    std::vector<double> col(xx.rows);
    for (std::size_t i = 0; i < xx.rows; ++i) col[i] = p.at(i, 1);
    return col;
  });
}

OvrSvcModel ovr_svc_fit(const DenseMatrix& x, const std::vector<int>& y,
                        std::size_t n_classes, const SvcConfig& cfg,
                        std::size_t n_threads) {
  return ovr_fit(
      n_classes,
      [&](std::size_t k) {
        std::vector<int> pm(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
          pm[i] = y[i] == static_cast<int>(k) ? 1 : -1;
        return linear_svc_fit(x, pm, cfg);
      },
      n_threads);
}

DenseMatrix ovr_svc_scores(const OvrSvcModel& m, const DenseMatrix& x) {
  return ovr_scores(m, x, [](const LinearSvcModel& sub, const DenseMatrix& xx) {
    return linear_svc_decision(sub, xx);
  });
}

}  // namespace ideolab
