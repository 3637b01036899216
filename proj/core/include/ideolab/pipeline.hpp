#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ideolab/embeddings.hpp"
#include "ideolab/eval.hpp"
#include "ideolab/feature_block.hpp"
#include "ideolab/model_json.hpp"
#include "ideolab/svd.hpp"
#include "ideolab/textfeat.hpp"

namespace ideolab {

// The five classification targets. Binary tasks drop the axis midpoint
// before splitting.
enum class Task { econ_binary, social_binary, econ_3, social_3, nine_class };

const char* task_name(Task t);
Task parse_task(const std::string& s);

// Class names sorted lexicographically, so class id order equals name order
// and every smallest-id tie-break is a lexicographic tie-break.
std::vector<std::string> task_class_names(Task t);

// Rows participating in a task and their class ids.
struct TaskLabels {
  std::vector<std::size_t> rows;  // indices into the full user list, ascending
  std::vector<int> y;             // parallel to rows
  std::vector<std::string> class_names;
};

TaskLabels task_labels(const std::vector<NineClass>& nine, Task t);

enum class FeatureSource { interaction, text_tfidf, text_embedding, text_combined, combined };

const char* feature_source_name(FeatureSource s);
FeatureSource parse_feature_source(const std::string& s);

struct FeatureSpec {
  FeatureSource source = FeatureSource::interaction;
  bool binarize = false;             // applies to the interaction block
  std::optional<std::size_t> svd_q;  // reduce the final block to q scores
  // tf-idf knobs for the text sources.
  double min_df = 2.0;
  double max_df = 0.95;
  std::size_t max_features = 20000;
};

struct SplitSpec {
  double train = 0.64;
  double val = 0.16;
  double test = 0.20;
  std::uint64_t seed = 42;
};

struct SplitIndices {
  std::vector<std::size_t> train;  // each part ascending; parts disjoint
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

// Uniform unstratified partition; sizes by largest-remainder rounding of the
// ratios. Requires n >= 5 so every part is populated.
SplitIndices split(std::size_t n, const SplitSpec& spec);

enum class ModelKind {
  zeror,
  logistic,
  multinomial,
  ovr_logistic,
  svc,
  ovr_svc,
  tree,
  forest,
  ovr_forest,
  adaboost,
};

const char* model_kind_name(ModelKind k);
ModelKind parse_model_kind(const std::string& s);

struct ModelSpec {
  ModelKind kind = ModelKind::logistic;
  double lambda = 0.0;        // logistic family
  double c = 1.0;             // svc family
  double eta = 1.0;           // adaboost
  std::size_t n_trees = 100;  // forest family
  std::size_t rounds = 50;    // adaboost
  Weighting weighting = Weighting::uniform;
};

// Shipped hyperparameter grid for a model family, in selection-priority
// order: primary knob (lambda / c / eta) outer, weighting inner.
std::vector<ModelSpec> default_grid(ModelKind kind);

// Human-readable one-line description, e.g. "logistic(lambda=0.1,weighting=uniform)".
std::string spec_summary(const ModelSpec& spec);

// Trains one classifier. Class ids must be 0..K-1; binary-only kinds
// (logistic, svc) require K = 2. seed feeds the randomized kinds.
AnyModel fit_model(const ModelSpec& spec, const DenseMatrix& x, const std::vector<int>& y,
                   std::size_t n_classes, std::uint64_t seed, std::size_t n_threads = 1);

// Everything an experiment consumes, row-aligned: users[i] owns interaction
// row i, labels[i], and tokens[i] (cleaned, stemmed comment tokens).
struct ExperimentInputs {
  CsrMatrix interactions;
  std::vector<std::string> users;
  std::vector<NineClass> labels;
  std::vector<std::vector<std::string>> tokens;  // may be empty when unused
  const EmbeddingTable* embeddings = nullptr;    // needed by embedding sources
};

// Feature construction with train-only statistics. fit() records the fitting
// row set and rejects a second call; transform() is read-only, so validation
// and test rows pass through exactly the transforms the training rows built.
class FeaturePipeline {
 public:
  FeaturePipeline(FeatureSpec spec, std::uint64_t seed);

  void fit(const ExperimentInputs& in, const std::vector<std::size_t>& fit_rows);
  DenseMatrix transform(const ExperimentInputs& in,
                        const std::vector<std::size_t>& rows) const;

  bool fitted() const { return fitted_; }
  const std::vector<std::size_t>& fit_rows() const { return fit_rows_; }
  const FeatureSpec& spec() const { return spec_; }
  const std::optional<TfidfModel>& tfidf() const { return tfidf_; }

 private:
  FeatureBlock assemble(const ExperimentInputs& in,
                        const std::vector<std::size_t>& rows) const;

  FeatureSpec spec_;
  std::uint64_t seed_;
  bool fitted_ = false;
  std::vector<std::size_t> fit_rows_;
  std::optional<TfidfModel> tfidf_;
  std::optional<RangeScaler> scaler_;
  std::optional<TruncatedSvd> svd_;
};

struct ExperimentConfig {
  Task task = Task::econ_binary;
  FeatureSpec features;
  std::vector<ModelSpec> grid;  // empty selects default_grid(grid_kind)
  ModelKind grid_kind = ModelKind::logistic;
  SplitSpec split;  // ratios only; its seed is overridden by `seed` below
  std::uint64_t seed = 42;  // master stream: split, transforms, model fitting
  std::size_t n_threads = 1;
};

struct GridOutcome {
  ModelSpec spec;
  bool ok = false;
  std::string error;          // populated when the fit failed
  double val_accuracy = 0.0;  // meaningful only when ok
};

struct ExperimentResult {
  EvalReport report;          // test metrics of the selected model
  SavedModel model;           // refit on train+val
  ModelSpec chosen;
  std::vector<GridOutcome> grid;  // one entry per config, grid order
  SavedModel baseline;            // plurality-class model on train+val
  double baseline_accuracy = 0.0;  // its test accuracy
  std::size_t n_rows = 0;          // rows in the task after filtering
};

// Full protocol: task filtering, split, train-only feature fitting,
// validation-accuracy hyperparameter selection (failed fits skipped, ties to
// the earlier grid entry), refit on train+val, test evaluation with weighted
// OVR AUC when the model yields scores (omitted when the test set lacks a
// class), and a plurality baseline on the same split.
ExperimentResult run_experiment(const ExperimentInputs& in, const ExperimentConfig& cfg);

}  // namespace ideolab
