#include <doctest.h>

#include <algorithm>
#include <cstddef>
#include <vector>

#include "ideolab/errors.hpp"
#include "ideolab/rng.hpp"
#include "ideolab/sampling_study.hpp"
#include "ideolab/synth.hpp"

using namespace ideolab;

namespace {

// Wide corpus where every user touches plenty of subreddits: high base rate
// over many columns, econ signal planted in the leading ones.
SynthCorpus wide_corpus(std::size_t n_users, double signal, std::uint64_t seed) {
  SynthConfig cfg;
  cfg.n_users = n_users;
  cfg.n_subreddits = 120;
  cfg.n_informative = 24;
  cfg.signal_strength = signal;
  cfg.base_rate = 0.7;
  cfg.label_scheme = LabelScheme::econ_binary;
  cfg.seed = seed;
  return generate_synth(cfg);
}

}  // namespace

TEST_CASE("study validates its configuration") {
  const SynthCorpus c = wide_corpus(60, 0.2, 41);
  const CsrMatrix& m = c.interactions.matrix;
  SamplingStudySpec spec;
  spec.min_unique = 40;
  spec.sizes = {};
  CHECK_THROWS_AS(restricted_sampling_study(m, c.labels, spec), ConfigInvalid);
  spec.sizes = {0};
  CHECK_THROWS_AS(restricted_sampling_study(m, c.labels, spec), ConfigInvalid);
  spec.sizes = {41};  // above min_unique, so some kept user may lack columns
  CHECK_THROWS_AS(restricted_sampling_study(m, c.labels, spec), ConfigInvalid);
  spec.sizes = {10};
  spec.task = Task::nine_class;
  CHECK_THROWS_AS(restricted_sampling_study(m, c.labels, spec), ConfigInvalid);
  spec.task = Task::econ_binary;
  CHECK_THROWS_AS(restricted_sampling_study(m, std::vector<NineClass>(3), spec),
                  LengthMismatch);
  spec.min_unique = 200;  // no synthetic user touches 200 of 120 columns
  spec.sizes = {10};
  CHECK_THROWS_AS(restricted_sampling_study(m, c.labels, spec), TooFewUsers);
}

TEST_CASE("only users with enough distinct subreddits are retained") {
  const SynthCorpus c = wide_corpus(80, 0.2, 42);
  const CsrMatrix& m = c.interactions.matrix;
  SamplingStudySpec spec;
  spec.min_unique = 80;
  spec.sizes = {5, 20};
  spec.seed = 3;
  const SamplingStudyResult r = restricted_sampling_study(m, c.labels, spec);
  CHECK(std::is_sorted(r.kept_rows.begin(), r.kept_rows.end()));
  CHECK(!r.kept_rows.empty());
  for (const std::size_t row : r.kept_rows)
    CHECK(m.row_ptr[row + 1] - m.row_ptr[row] >= 80);
  // Exactly the qualifying rows are kept.
  std::size_t qualifying = 0;
  for (std::size_t row = 0; row < m.rows; ++row)
    if (m.row_ptr[row + 1] - m.row_ptr[row] >= 80) ++qualifying;
  CHECK(r.kept_rows.size() == qualifying);
  CHECK(r.class_names == std::vector<std::string>{"left", "right"});
  CHECK(r.sizes == spec.sizes);
  REQUIRE(r.accuracy.size() == 2);
  CHECK(r.n_train + r.n_test == r.kept_rows.size());
  // 80/20: train merges the 64% and 16% parts.
  CHECK(r.n_train == (r.kept_rows.size() * 4) / 5);
}

TEST_CASE("results are deterministic and order independent") {
  const SynthCorpus c = wide_corpus(150, 0.25, 43);
  const CsrMatrix& m = c.interactions.matrix;
  SamplingStudySpec spec;
  spec.min_unique = 70;
  spec.sizes = {10, 40, 70};
  spec.seed = 5;
  const SamplingStudyResult a = restricted_sampling_study(m, c.labels, spec);
  const SamplingStudyResult b = restricted_sampling_study(m, c.labels, spec);
  CHECK(a.accuracy == b.accuracy);
  CHECK(a.kept_rows == b.kept_rows);

  // Each size owns its stream: reordering sizes permutes the accuracies.
  SamplingStudySpec rev = spec;
  rev.sizes = {70, 40, 10};
  const SamplingStudyResult r = restricted_sampling_study(m, c.labels, rev);
  CHECK(r.accuracy[0] == a.accuracy[2]);
  CHECK(r.accuracy[1] == a.accuracy[1]);
  CHECK(r.accuracy[2] == a.accuracy[0]);

  SamplingStudySpec other = spec;
  other.seed = 6;
  const SamplingStudyResult d = restricted_sampling_study(m, c.labels, other);
  CHECK(d.accuracy != a.accuracy);
}

TEST_CASE("more sampled subreddits recover more signal") {
  const SynthCorpus c = wide_corpus(500, 0.25, 44);
  const CsrMatrix& m = c.interactions.matrix;
  SamplingStudySpec spec;
  spec.min_unique = 60;
  spec.sizes = {2, 60};
  spec.seed = 7;
  const SamplingStudyResult r = restricted_sampling_study(m, c.labels, spec);
  REQUIRE(r.accuracy.size() == 2);
  // Two random columns carry almost no planted signal; sixty carry plenty.
  CHECK(r.accuracy[1] > r.accuracy[0] + 0.08);
  CHECK(r.accuracy[1] > 0.7);
}

TEST_CASE("sampling nnz columns reproduces the binarized row") {
  // When k equals every retained user's nnz the draw is the whole row, so
  // the design matrix is exactly the binarized matrix and accuracy matches
  // a direct logistic fit.
  const SynthCorpus c = wide_corpus(200, 0.3, 45);
  const CsrMatrix& m = c.interactions.matrix;
  std::size_t min_nnz = m.cols;
  for (std::size_t row = 0; row < m.rows; ++row)
    min_nnz = std::min(min_nnz, m.row_ptr[row + 1] - m.row_ptr[row]);
  REQUIRE(min_nnz >= 40);  // base rate 0.7 over 120 columns keeps rows dense

  SamplingStudySpec spec;
  spec.min_unique = min_nnz;
  spec.sizes = {min_nnz};
  spec.seed = 9;
  const SamplingStudyResult r = restricted_sampling_study(m, c.labels, spec);
  CHECK(r.kept_rows.size() == m.rows);

  // Users whose nnz is exactly min_nnz keep every column; others keep a
  // random subset, so only the floor accuracy is pinned: the study can never
  // see columns the user never touched.
  CHECK(r.accuracy[0] > 0.55);
}
