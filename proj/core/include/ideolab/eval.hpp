#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ideolab/csr.hpp"
#include "ideolab/dense.hpp"
#include "ideolab/labels.hpp"

namespace ideolab {

// ROC points swept over descending thresholds with score > tau counted as
// positive; the final -inf threshold yields the (1,1) endpoint.
struct RocCurve {
  std::vector<double> thresholds;
  std::vector<double> tpr;
  std::vector<double> fpr;
};

struct EvalReport {
  std::vector<std::string> class_names;
  double accuracy = 0.0;
  std::optional<double> auc;                       // prevalence-weighted overall
  std::optional<std::vector<double>> per_class_auc;  // parallel to class_names
  std::vector<double> prevalence;                  // test-set class fractions
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
  std::size_t n_train = 0;
  std::size_t n_val = 0;
  std::size_t n_test = 0;
};

double accuracy(const std::vector<int>& y, const std::vector<int>& yhat);

// Exact trapezoidal AUC from the integer pair statistic
// (2*wins + ties) / (2*P*N), identical to Mann-Whitney with half ties.
double binary_auc(const std::vector<double>& scores, const std::vector<int>& y01);

RocCurve roc_curve(const std::vector<double>& scores, const std::vector<int>& y01);

struct WeightedAuc {
  double overall = 0.0;
  std::vector<double> per_class;
  std::vector<double> prevalence;
};

// Per-class one-vs-rest AUC on each score column, combined by test-set
// prevalence. Every class in [0, K) must appear in y.
WeightedAuc weighted_ovr_auc(const DenseMatrix& scores, const std::vector<int>& y);

// counts[true][predicted] over class ids [0, K).
std::vector<std::vector<std::size_t>> confusion(const std::vector<int>& y,
                                                const std::vector<int>& yhat,
                                                std::size_t n_classes);

// Pearson r of each column against the numeric label; zero-variance columns
// give r = 0. Labels with zero variance are rejected.
std::vector<double> term_label_correlation(const CsrMatrix& x,
                                           const std::vector<int>& labels);

// Numeric axis encodings for the correlation analysis.
inline int axis_value(EconLabel l) {
  return l == EconLabel::left ? -1 : l == EconLabel::right ? 1 : 0;
}
inline int axis_value(SocialLabel l) {
  return l == SocialLabel::lib ? -1 : l == SocialLabel::auth ? 1 : 0;
}

}  // namespace ideolab
