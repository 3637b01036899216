#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "ideolab/dense.hpp"
#include "ideolab/errors.hpp"
#include "ideolab/rng.hpp"
#include "ideolab/tree.hpp"

using namespace ideolab;

namespace {

struct BestSplit {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double score = 0.0;  // W_L * G_L + W_R * G_R, lower is better
};

// Exhaustive scan over every feature and every midpoint between consecutive
// distinct sorted values; first candidate in (feature, threshold) order wins
// ties. Completely independent of the tree's incremental bookkeeping.
BestSplit brute_force_stump(const DenseMatrix& x, const std::vector<int>& y,
                            std::size_t n_classes, const std::vector<double>& w,
                            std::size_t min_bucket) {
  BestSplit best;
  double total_w = 0.0;
  for (const double v : w) total_w += v;
  const double tie_tol = 1e-12 * total_w;
  for (std::size_t f = 0; f < x.cols; ++f) {
    std::set<double> values;
    for (std::size_t i = 0; i < x.rows; ++i) values.insert(x.at(i, f));
    std::vector<double> sorted(values.begin(), values.end());
    for (std::size_t t = 0; t + 1 < sorted.size(); ++t) {
      const double threshold = 0.5 * (sorted[t] + sorted[t + 1]);
      std::vector<double> lh(n_classes, 0.0), rh(n_classes, 0.0);
      std::size_t n_left = 0;
      for (std::size_t i = 0; i < x.rows; ++i) {
        if (x.at(i, f) < threshold) {
          lh[static_cast<std::size_t>(y[i])] += w[i];
          ++n_left;
        } else {
          rh[static_cast<std::size_t>(y[i])] += w[i];
        }
      }
      if (n_left < min_bucket || x.rows - n_left < min_bucket) continue;
      double lw = 0.0, rw = 0.0;
      for (const double v : lh) lw += v;
      for (const double v : rh) rw += v;
      const double score = lw * gini_impurity(lh) + rw * gini_impurity(rh);
      if (!best.found || score < best.score - tie_tol) {
        best = {true, f, threshold, score};
      }
    }
  }
  return best;
}

TreeConfig stump_config() {
  TreeConfig cfg;
  cfg.min_bucket = 1;
  cfg.min_samples = 2;
  cfg.max_depth = 1;
  return cfg;
}

}  // namespace

TEST_CASE("gini impurity closed forms") {
  CHECK(gini_impurity({1.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gini_impurity({1.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(gini_impurity({2.0, 1.0, 1.0}) == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(gini_impurity({0.0, 3.0}) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("stump split matches the exhaustive oracle") {
  Rng rng(301);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + rng.uniform_int(20);
    const std::size_t p = 1 + rng.uniform_int(4);
    const std::size_t k = 2 + rng.uniform_int(3);
    DenseMatrix x(n, p);
    std::vector<int> y(n);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<int>(rng.uniform_int(k));
      w[i] = 0.25 + rng.uniform();
      // Quantized features produce plenty of exact ties to exercise the
      // first-candidate rule.
      for (std::size_t j = 0; j < p; ++j)
        x.at(i, j) = static_cast<double>(rng.uniform_int(5));
    }
    const BestSplit oracle = brute_force_stump(x, y, k, w, 1);
    const TreeModel m = tree_fit(x, y, k, w, stump_config());
    if (!oracle.found) continue;  // single distinct value everywhere
    const auto& root = m.nodes[0];
    const double parent = [&] {
      std::vector<double> h(k, 0.0);
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) h[static_cast<std::size_t>(y[i])] += w[i];
      for (const double v : h) total += v;
      return total * gini_impurity(h);
    }();
    const double tie_tol = 1e-12 * [&] {
      double t = 0.0;
      for (const double v : w) t += v;
      return t;
    }();
    if (oracle.score >= parent - tie_tol) {
      CHECK(root.feature == -1);  // no impurity reduction: stays a leaf
      continue;
    }
    REQUIRE(root.feature >= 0);
    CHECK(static_cast<std::size_t>(root.feature) == oracle.feature);
    CHECK(root.threshold == doctest::Approx(oracle.threshold).epsilon(1e-12));
  }
}

TEST_CASE("ties resolve to the first feature and smallest threshold") {
  // Feature 1 duplicates feature 0: the split must name feature 0.
  DenseMatrix x(4, 2);
  const std::vector<int> y = {0, 0, 1, 1};
  for (std::size_t i = 0; i < 4; ++i) {
    x.at(i, 0) = static_cast<double>(i);
    x.at(i, 1) = static_cast<double>(i);
  }
  const TreeModel m = tree_fit(x, y, 2, std::vector<double>{}, stump_config());
  CHECK(m.nodes[0].feature == 0);
  CHECK(m.nodes[0].threshold == doctest::Approx(1.5).epsilon(1e-15));

  // Alternating labels: thresholds 0.5 and 2.5 tie; the smaller one wins.
  DenseMatrix xa(4, 1);
  for (std::size_t i = 0; i < 4; ++i) xa.at(i, 0) = static_cast<double>(i);
  const std::vector<int> ya = {0, 1, 0, 1};
  const TreeModel ma = tree_fit(xa, ya, 2, std::vector<double>{}, stump_config());
  REQUIRE(ma.nodes[0].feature == 0);
  CHECK(ma.nodes[0].threshold == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("pure and uninformative nodes stay leaves") {
  DenseMatrix x(5, 1);
  for (std::size_t i = 0; i < 5; ++i) x.at(i, 0) = static_cast<double>(i);
  const TreeModel pure = tree_fit(x, {1, 1, 1, 1, 1}, 2, std::vector<double>{}, stump_config());
  CHECK(pure.nodes.size() == 1);
  CHECK(pure.nodes[0].feature == -1);
  CHECK(tree_predict(pure, x) == std::vector<int>(5, 1));

  // Balanced xor-style labels: every split has zero gain, so no split is made.
  DenseMatrix xx(4, 2);
  xx.at(0, 0) = 0;  xx.at(0, 1) = 0;
  xx.at(1, 0) = 0;  xx.at(1, 1) = 1;
  xx.at(2, 0) = 1;  xx.at(2, 1) = 0;
  xx.at(3, 0) = 1;  xx.at(3, 1) = 1;
  const TreeModel un = tree_fit(xx, {0, 1, 1, 0}, 2, std::vector<double>{}, stump_config());
  CHECK(un.nodes.size() == 1);
}

TEST_CASE("quadrant labels are learned exactly at depth two") {
  Rng rng(302);
  DenseMatrix x(60, 2);
  std::vector<int> y(60);
  for (std::size_t i = 0; i < 60; ++i) {
    x.at(i, 0) = rng.normal();
    x.at(i, 1) = rng.normal();
    y[i] = (x.at(i, 0) > 0 ? 1 : 0) + (x.at(i, 1) > 0 ? 1 : 0);
  }
  TreeConfig cfg;
  cfg.min_bucket = 1;
  cfg.min_samples = 2;
  cfg.max_depth = 2;
  const TreeModel m = tree_fit(x, y, 3, std::vector<double>{}, cfg);
  CHECK(tree_predict(m, x) == y);
}

TEST_CASE("stopping controls are respected") {
  Rng rng(303);
  DenseMatrix x(12, 1);
  std::vector<int> y(12);
  for (std::size_t i = 0; i < 12; ++i) {
    x.at(i, 0) = static_cast<double>(i);
    y[i] = i < 6 ? 0 : 1;
  }
  SUBCASE("min_samples forbids the root split") {
    TreeConfig cfg;
    cfg.min_bucket = 1;
    cfg.min_samples = 13;
    const TreeModel m = tree_fit(x, y, 2, std::vector<double>{}, cfg);
    CHECK(m.nodes.size() == 1);
  }
  SUBCASE("min_bucket excludes lopsided splits") {
    // Only a 1-vs-11 split separates class 0; min_bucket 2 forbids it.
    std::vector<int> lop(12, 1);
    lop[0] = 0;
    TreeConfig cfg;
    cfg.min_bucket = 2;
    cfg.min_samples = 4;
    cfg.max_depth = 1;
    const TreeModel m = tree_fit(x, lop, 2, std::vector<double>{}, cfg);
    if (m.nodes[0].feature >= 0) {
      // Any split taken must leave two raw samples per side.
      std::size_t n_left = 0;
      for (std::size_t i = 0; i < 12; ++i)
        if (x.at(i, 0) < m.nodes[0].threshold) ++n_left;
      CHECK(n_left >= 2);
      CHECK(12 - n_left >= 2);
    }
  }
  SUBCASE("max_depth bounds the node count") {
    TreeConfig cfg;
    cfg.min_bucket = 1;
    cfg.min_samples = 2;
    cfg.max_depth = 1;
    const TreeModel m = tree_fit(x, y, 2, std::vector<double>{}, cfg);
    CHECK(m.nodes.size() <= 3);
  }
}

TEST_CASE("doubling a weight equals duplicating the row") {
  Rng rng(304);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 8;
    DenseMatrix x(n, 2), xd(n + 1, 2);
    std::vector<int> y(n), yd(n + 1);
    std::vector<double> w(n, 1.0), wd(n + 1, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<int>(rng.uniform_int(2));
      for (std::size_t j = 0; j < 2; ++j)
        x.at(i, j) = static_cast<double>(rng.uniform_int(4));
    }
    w[3] = 2.0;  // duplicate row 3 in the second dataset instead
    for (std::size_t i = 0; i < n; ++i) {
      yd[i] = y[i];
      for (std::size_t j = 0; j < 2; ++j) xd.at(i, j) = x.at(i, j);
    }
    yd[n] = y[3];
    xd.at(n, 0) = x.at(3, 0);
    xd.at(n, 1) = x.at(3, 1);

    TreeConfig cfg;
    cfg.min_bucket = 1;
    cfg.min_samples = 2;
    cfg.max_depth = 1;
    const TreeModel a = tree_fit(x, y, 2, w, cfg);
    const TreeModel b = tree_fit(xd, yd, 2, wd, cfg);
    CHECK(a.nodes[0].feature == b.nodes[0].feature);
    if (a.nodes[0].feature >= 0)
      CHECK(a.nodes[0].threshold == doctest::Approx(b.nodes[0].threshold).epsilon(1e-12));
  }
}

TEST_CASE("probabilities are normalized leaf histograms") {
  Rng rng(305);
  DenseMatrix x(30, 2);
  std::vector<int> y(30);
  for (std::size_t i = 0; i < 30; ++i) {
    x.at(i, 0) = rng.normal();
    x.at(i, 1) = rng.normal();
    y[i] = x.at(i, 0) + 0.3 * rng.normal() > 0 ? 1 : 0;
  }
  TreeConfig cfg;
  cfg.min_bucket = 2;
  cfg.min_samples = 4;
  const TreeModel m = tree_fit(x, y, 2, std::vector<double>{}, cfg);
  const DenseMatrix proba = tree_predict_proba(m, x);
  const auto pred = tree_predict(m, x);
  for (std::size_t i = 0; i < 30; ++i) {
    CHECK(proba.at(i, 0) + proba.at(i, 1) == doctest::Approx(1.0).epsilon(1e-12));
    const int arg = proba.at(i, 1) > proba.at(i, 0) ? 1 : 0;  // smallest id wins ties
    CHECK(pred[i] == arg);
  }
}

TEST_CASE("importance lands on the informative feature") {
  Rng rng(306);
  DenseMatrix x(50, 3);
  std::vector<int> y(50);
  for (std::size_t i = 0; i < 50; ++i) {
    for (std::size_t j = 0; j < 3; ++j) x.at(i, j) = rng.normal();
    y[i] = x.at(i, 1) > 0 ? 1 : 0;  // only feature 1 matters
  }
  TreeConfig cfg;
  cfg.min_bucket = 1;
  cfg.min_samples = 2;
  const TreeModel m = tree_fit(x, y, 2, std::vector<double>{}, cfg);
  REQUIRE(m.importance.size() == 3);
  for (const double v : m.importance) CHECK(v >= 0.0);
  CHECK(m.importance[1] > m.importance[0]);
  CHECK(m.importance[1] > m.importance[2]);
  CHECK(tree_predict(m, x) == y);
}

TEST_CASE("feature subsampling requires an rng and stays deterministic") {
  DenseMatrix x(10, 3);
  Rng rng(307);
  std::vector<int> y(10);
  for (std::size_t i = 0; i < 10; ++i) {
    y[i] = static_cast<int>(i % 2);
    for (std::size_t j = 0; j < 3; ++j) x.at(i, j) = rng.normal();
  }
  TreeConfig cfg;
  cfg.min_bucket = 1;
  cfg.min_samples = 2;
  cfg.m_try = 2;
  CHECK_THROWS_AS(tree_fit(x, y, 2, std::vector<double>{}, cfg), ConfigInvalid);
  Rng r1(99), r2(99);
  const TreeModel a = tree_fit(x, y, 2, std::vector<double>{}, cfg, &r1);
  const TreeModel b = tree_fit(x, y, 2, std::vector<double>{}, cfg, &r2);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].feature == b.nodes[i].feature);
    CHECK(a.nodes[i].threshold == b.nodes[i].threshold);
  }
}

TEST_CASE("input validation") {
  DenseMatrix x(2, 1);
  CHECK_THROWS_AS(tree_fit(DenseMatrix(0, 1), {}, 2, std::vector<double>{}, TreeConfig{}),
                  EmptyTrainingSet);
  CHECK_THROWS_AS(tree_fit(x, {0}, 2, std::vector<double>{}, TreeConfig{}), LengthMismatch);
  CHECK_THROWS_AS(tree_fit(x, {0, 2}, 2, std::vector<double>{}, TreeConfig{}), UnknownLabel);
  TreeConfig bad;
  bad.min_bucket = 3;
  bad.min_samples = 4;  // < 2*min_bucket
  CHECK_THROWS_AS(tree_fit(x, {0, 1}, 2, std::vector<double>{}, bad), ConfigInvalid);
}
