#include "ideolab/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ideolab/errors.hpp"

namespace ideolab {

double gini_impurity(const std::vector<double>& class_weight) {
  double total = 0.0;
  for (const double w : class_weight) total += w;
  if (total <= 0.0) return 0.0;
  double sq = 0.0;
  for (const double w : class_weight) {
    const double p = w / total;
    sq += p * p;
  }
  return 1.0 - sq;
}

namespace {

struct Builder {
  const DenseMatrix& x;
  const std::vector<int>& y;
  const std::vector<double>& w;
  std::size_t n_classes;
  const TreeConfig& cfg;
  Rng* rng;
  TreeModel& model;

  // Scratch reused across nodes.
  std::vector<std::size_t> order;

  // Builds the subtree over samples[begin, end) (indices into x), returns
  // the node id. Partitions `samples` in place.
  std::int32_t build(std::vector<std::size_t>& samples, std::size_t begin, std::size_t end,
                     std::size_t depth) {
    const std::size_t n_node = end - begin;
    std::vector<double> hist(n_classes, 0.0);
    for (std::size_t i = begin; i < end; ++i)
      hist[static_cast<std::size_t>(y[samples[i]])] += w[samples[i]];

    const std::int32_t id = static_cast<std::int32_t>(model.nodes.size());
    model.nodes.emplace_back();
    model.nodes.back().class_weight = hist;

    std::size_t present = 0;
    for (const double h : hist)
      if (h > 0.0) ++present;
    if (n_node < cfg.min_samples || depth >= cfg.max_depth || present <= 1) return id;

    // Candidate features: all, or an m_try sample without replacement. The
    // sampled set is sorted so tie-breaking stays in ascending feature order.
    std::vector<std::size_t> features;
    if (cfg.m_try && *cfg.m_try < x.cols) {
      if (rng == nullptr) throw ConfigInvalid("tree_fit: m_try sampling needs an rng");
      features = rng->sample_without_replacement(x.cols, *cfg.m_try);
      std::sort(features.begin(), features.end());
    } else {
      features.resize(x.cols);
      std::iota(features.begin(), features.end(), std::size_t{0});
    }

    const double total_w = std::accumulate(hist.begin(), hist.end(), 0.0);
    const double parent_score = total_w * gini_impurity(hist);
    // Candidates whose scores agree up to accumulated round-off are ties, and
    // ties go to the first candidate in (feature, threshold) order.
    const double tie_tol = 1e-12 * total_w;

    double best_score = std::numeric_limits<double>::infinity();
    std::size_t best_feature = 0;
    double best_threshold = 0.0;

    std::vector<double> left_hist(n_classes, 0.0);
    for (const std::size_t f : features) {
      order.assign(samples.begin() + static_cast<std::ptrdiff_t>(begin),
                   samples.begin() + static_cast<std::ptrdiff_t>(end));
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = x.at(a, f), vb = x.at(b, f);
        if (va != vb) return va < vb;
        return a < b;  // stable under equal values for determinism
      });

      std::fill(left_hist.begin(), left_hist.end(), 0.0);
      double left_w = 0.0;
      double left_sq = 0.0;  // sum of squared class weights on the left
      double right_w = total_w;
      std::vector<double> right_hist = hist;
      double right_sq = 0.0;
      for (const double h : hist) right_sq += h * h;

      for (std::size_t i = 0; i + 1 < n_node; ++i) {
        const std::size_t s = order[i];
        const double wi = w[s];
        const std::size_t c = static_cast<std::size_t>(y[s]);
        left_sq += wi * (2.0 * left_hist[c] + wi);
        right_sq += wi * (wi - 2.0 * right_hist[c]);
        left_hist[c] += wi;
        right_hist[c] -= wi;
        left_w += wi;
        right_w -= wi;

        const double v_here = x.at(s, f);
        const double v_next = x.at(order[i + 1], f);
        if (v_here == v_next) continue;  // threshold only between distinct values
        const std::size_t n_left = i + 1;
        const std::size_t n_right = n_node - n_left;
        if (n_left < cfg.min_bucket || n_right < cfg.min_bucket) continue;

        // n1*G1 + n2*G2 with weighted totals: W_side * (1 - sq/W_side^2).
        const double g_left = left_w > 0.0 ? left_w - left_sq / left_w : 0.0;
        const double g_right = right_w > 0.0 ? right_w - right_sq / right_w : 0.0;
        const double score = g_left + g_right;
        if (score < best_score - tie_tol) {
          best_score = score;
          best_feature = f;
          best_threshold = 0.5 * (v_here + v_next);
        }
      }
    }

    if (!std::isfinite(best_score)) return id;  // no admissible split
    const double decrease = parent_score - best_score;
    if (decrease <= tie_tol) return id;  // split would not reduce impurity

    // Partition in place: [begin, mid) strictly below threshold.
    const auto mid_it = std::stable_partition(
        samples.begin() + static_cast<std::ptrdiff_t>(begin),
        samples.begin() + static_cast<std::ptrdiff_t>(end),
        [&](std::size_t s) { return x.at(s, best_feature) < best_threshold; });
    const std::size_t mid =
        static_cast<std::size_t>(mid_it - samples.begin());

    model.importance[best_feature] += decrease;
    model.nodes[static_cast<std::size_t>(id)].feature = static_cast<int>(best_feature);
    model.nodes[static_cast<std::size_t>(id)].threshold = best_threshold;
    const std::int32_t left_id = build(samples, begin, mid, depth + 1);
    model.nodes[static_cast<std::size_t>(id)].left = left_id;
    const std::int32_t right_id = build(samples, mid, end, depth + 1);
    model.nodes[static_cast<std::size_t>(id)].right = right_id;
    return id;
  }
};

}  // namespace

TreeModel tree_fit(const DenseMatrix& x, const std::vector<int>& y, std::size_t n_classes,
                   const std::vector<double>& sample_weight, const TreeConfig& cfg,
                   Rng* rng) {
  if (x.rows == 0) throw EmptyTrainingSet("tree_fit: no rows");
  if (y.size() != x.rows) throw LengthMismatch("tree_fit: y length != row count");
  if (!sample_weight.empty() && sample_weight.size() != x.rows)
    throw LengthMismatch("tree_fit: weight length != row count");
  if (cfg.min_bucket < 1) throw ConfigInvalid("tree_fit: min_bucket must be >= 1");
  if (cfg.min_samples < 2 * cfg.min_bucket)
    throw ConfigInvalid("tree_fit: min_samples must be >= 2*min_bucket");
  for (const int c : y)
    if (c < 0 || static_cast<std::size_t>(c) >= n_classes)
      throw UnknownLabel("tree_fit: label outside [0, K)");

  std::vector<double> ones;
  const std::vector<double>* wp = &sample_weight;
  if (sample_weight.empty()) {
    ones.assign(x.rows, 1.0);
    wp = &ones;
  }

  TreeModel model;
  model.n_classes = n_classes;
  model.n_features = x.cols;
  model.min_bucket = cfg.min_bucket;
  model.min_samples = cfg.min_samples;
  model.importance.assign(x.cols, 0.0);

  std::vector<std::size_t> samples(x.rows);
  std::iota(samples.begin(), samples.end(), std::size_t{0});
  Builder b{x, y, *wp, n_classes, cfg, rng, model, {}};
  b.build(samples, 0, x.rows, 0);
  return model;
}

TreeModel tree_fit(const DenseMatrix& x, const std::vector<int>& y, std::size_t n_classes,
                   Weighting weighting, const TreeConfig& cfg, Rng* rng) {
  const auto w = sample_weights(y, n_classes, weighting);
  return tree_fit(x, y, n_classes, w, cfg, rng);
}

namespace {

const TreeModel::Node& leaf_for(const TreeModel& m, const DenseMatrix& x, std::size_t row) {
  const TreeModel::Node* node = &m.nodes[0];
  while (node->feature >= 0) {
    const double v = x.at(row, static_cast<std::size_t>(node->feature));
    node = &m.nodes[static_cast<std::size_t>(v < node->threshold ? node->left : node->right)];
  }
  return *node;
}

}  // namespace

std::vector<int> tree_predict(const TreeModel& m, const DenseMatrix& x) {
  if (x.cols != m.n_features) throw DimensionError("tree_predict: feature count mismatch");
  std::vector<int> out(x.rows, 0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    const auto& leaf = leaf_for(m, x, i);
    std::size_t best = 0;
    for (std::size_t k = 1; k < m.n_classes; ++k)
      if (leaf.class_weight[k] > leaf.class_weight[best]) best = k;
    out[i] = static_cast<int>(best);
  }
  return out;
}

DenseMatrix tree_predict_proba(const TreeModel& m, const DenseMatrix& x) {
  if (x.cols != m.n_features)
    throw DimensionError("tree_predict_proba: feature count mismatch");
  DenseMatrix p(x.rows, m.n_classes);
  for (std::size_t i = 0; i < x.rows; ++i) {
    const auto& leaf = leaf_for(m, x, i);
    double total = 0.0;
    for (const double w : leaf.class_weight) total += w;
    if (total <= 0.0) continue;
    for (std::size_t k = 0; k < m.n_classes; ++k) p.at(i, k) = leaf.class_weight[k] / total;
  }
  return p;
}

}  // namespace ideolab
