#include "ideolab/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ideolab/errors.hpp"

namespace ideolab {

double accuracy(const std::vector<int>& y, const std::vector<int>& yhat) {
  if (y.size() != yhat.size()) throw LengthMismatch("accuracy: length mismatch");
  if (y.empty()) throw LengthMismatch("accuracy: empty label vector");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] == yhat[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(y.size());
}

namespace {

// Rows sorted by descending score with positive/negative counts per
// distinct score value.
struct ScoreGroups {
  std::vector<double> score;       // strictly decreasing
  std::vector<std::size_t> pos;    // positives at this score
  std::vector<std::size_t> neg;    // negatives at this score
  std::size_t total_pos = 0;
  std::size_t total_neg = 0;
};

ScoreGroups group_scores(const std::vector<double>& scores, const std::vector<int>& y01) {
  if (scores.size() != y01.size()) throw LengthMismatch("auc: length mismatch");
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  ScoreGroups g;
  for (const std::size_t i : order) {
    if (y01[i] != 0 && y01[i] != 1) throw UnknownLabel("auc: labels must be 0/1");
    if (g.score.empty() || scores[i] != g.score.back()) {
      g.score.push_back(scores[i]);
      g.pos.push_back(0);
      g.neg.push_back(0);
    }
    if (y01[i] == 1) {
      ++g.pos.back();
      ++g.total_pos;
    } else {
      ++g.neg.back();
      ++g.total_neg;
    }
  }
  if (g.total_pos == 0 || g.total_neg == 0)
    throw SingleClass("auc: both classes must be present");
  return g;
}

}  // namespace

double binary_auc(const std::vector<double>& scores, const std::vector<int>& y01) {
  const ScoreGroups g = group_scores(scores, y01);
  // For positives in a group: 2 per negative with strictly lower score plus
  // 1 per tied negative. Integer arithmetic keeps the sum exact.
  unsigned long long numerator = 0;
  std::size_t neg_seen = 0;
  for (std::size_t k = 0; k < g.score.size(); ++k) {
    const unsigned long long below =
        static_cast<unsigned long long>(g.total_neg - neg_seen - g.neg[k]);
    numerator += static_cast<unsigned long long>(g.pos[k]) *
                 (2ULL * below + static_cast<unsigned long long>(g.neg[k]));
    neg_seen += g.neg[k];
  }
  return static_cast<double>(numerator) /
         (2.0 * static_cast<double>(g.total_pos) * static_cast<double>(g.total_neg));
}

RocCurve roc_curve(const std::vector<double>& scores, const std::vector<int>& y01) {
  const ScoreGroups g = group_scores(scores, y01);
  RocCurve curve;
  const double p = static_cast<double>(g.total_pos);
  const double n = static_cast<double>(g.total_neg);
  // tau = highest score: nothing is strictly above it, giving (0,0).
  curve.thresholds.push_back(g.score.front());
  curve.tpr.push_back(0.0);
  curve.fpr.push_back(0.0);
  std::size_t pos_above = 0, neg_above = 0;
  for (std::size_t k = 0; k < g.score.size(); ++k) {
    pos_above += g.pos[k];
    neg_above += g.neg[k];
    curve.thresholds.push_back(k + 1 < g.score.size()
                                   ? g.score[k + 1]
                                   : -std::numeric_limits<double>::infinity());
    curve.tpr.push_back(static_cast<double>(pos_above) / p);
    curve.fpr.push_back(static_cast<double>(neg_above) / n);
  }
  return curve;
}

WeightedAuc weighted_ovr_auc(const DenseMatrix& scores, const std::vector<int>& y) {
  if (scores.rows != y.size()) throw LengthMismatch("weighted_ovr_auc: length mismatch");
  const std::size_t k = scores.cols;
  std::vector<std::size_t> counts(k, 0);
  for (const int c : y) {
    if (c < 0 || static_cast<std::size_t>(c) >= k)
      throw UnknownLabel("weighted_ovr_auc: label outside [0, K)");
    ++counts[static_cast<std::size_t>(c)];
  }
  for (std::size_t j = 0; j < k; ++j)
    if (counts[j] == 0) throw MissingClass("weighted_ovr_auc: class absent from y");

  WeightedAuc out;
  out.per_class.resize(k);
  out.prevalence.resize(k);
  std::vector<double> col(y.size());
  std::vector<int> pos(y.size());
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      col[i] = scores.at(i, j);
      pos[i] = y[i] == static_cast<int>(j) ? 1 : 0;
    }
    out.per_class[j] = binary_auc(col, pos);
    out.prevalence[j] =
        static_cast<double>(counts[j]) / static_cast<double>(y.size());
    out.overall += out.prevalence[j] * out.per_class[j];
  }
  return out;
}

std::vector<std::vector<std::size_t>> confusion(const std::vector<int>& y,
                                                const std::vector<int>& yhat,
                                                std::size_t n_classes) {
  if (y.size() != yhat.size()) throw LengthMismatch("confusion: length mismatch");
  std::vector<std::vector<std::size_t>> m(n_classes,
                                          std::vector<std::size_t>(n_classes, 0));
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < 0 || static_cast<std::size_t>(y[i]) >= n_classes ||
        yhat[i] < 0 || static_cast<std::size_t>(yhat[i]) >= n_classes)
      throw UnknownLabel("confusion: label outside [0, K)");
    ++m[static_cast<std::size_t>(y[i])][static_cast<std::size_t>(yhat[i])];
  }
  return m;
}

std::vector<double> term_label_correlation(const CsrMatrix& x,
                                           const std::vector<int>& labels) {
  if (labels.size() != x.rows)
    throw LengthMismatch("term_label_correlation: label count != row count");
  const double n = static_cast<double>(x.rows);
  double l_sum = 0.0, l_sq = 0.0;
  for (const int l : labels) {
    l_sum += l;
    l_sq += static_cast<double>(l) * l;
  }
  const double l_var = l_sq - l_sum * l_sum / n;
  if (!(l_var > 0.0))
    throw DegenerateLabels("term_label_correlation: labels have zero variance");

  std::vector<double> x_sum(x.cols, 0.0), x_sq(x.cols, 0.0), xl(x.cols, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double l = static_cast<double>(labels[i]);
    for (std::size_t idx = x.row_ptr[i]; idx < x.row_ptr[i + 1]; ++idx) {
      const std::size_t j = x.col_idx[idx];
      const double v = x.values[idx];
      x_sum[j] += v;
      x_sq[j] += v * v;
      xl[j] += v * l;
    }
  }
  std::vector<double> r(x.cols, 0.0);
  for (std::size_t j = 0; j < x.cols; ++j) {
    const double x_var = x_sq[j] - x_sum[j] * x_sum[j] / n;
    // Relative guard absorbs rounding residue from constant nonzero columns.
    if (!(x_var > 1e-12 * x_sq[j])) continue;
    const double cov = xl[j] - x_sum[j] * l_sum / n;
    r[j] = cov / std::sqrt(x_var * l_var);
  }
  return r;
}

}  // namespace ideolab
