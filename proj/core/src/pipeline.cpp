#include "ideolab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ideolab/errors.hpp"
#include "ideolab/io.hpp"
#include "ideolab/ovr.hpp"
#include "ideolab/parallel.hpp"
#include "ideolab/rng.hpp"
#include "ideolab/zeror.hpp"

namespace ideolab {

const char* task_name(Task t) {
  switch (t) {
    case Task::econ_binary: return "econ_binary";
    case Task::social_binary: return "social_binary";
    case Task::econ_3: return "econ_3";
    case Task::social_3: return "social_3";
    case Task::nine_class: return "nine_class";
  }
  return "?";
}

Task parse_task(const std::string& s) {
  for (const Task t : {Task::econ_binary, Task::social_binary, Task::econ_3,
                       Task::social_3, Task::nine_class})
    if (s == task_name(t)) return t;
  throw ConfigInvalid("unknown task: \"" + s + "\"");
}

std::vector<std::string> task_class_names(Task t) {
  switch (t) {
    case Task::econ_binary: return {"left", "right"};
    case Task::social_binary: return {"auth", "lib"};
    case Task::econ_3: return {"center", "left", "right"};
    case Task::social_3: return {"auth", "center", "lib"};
    case Task::nine_class: {
      std::vector<std::string> names;
      for (int k = 0; k < kNineClassCount; ++k)
        names.push_back(name(static_cast<NineClass>(k)));
      return names;  // the enum is declared in alphabetical order
    }
  }
  return {};
}

TaskLabels task_labels(const std::vector<NineClass>& nine, Task t) {
  TaskLabels out;
  out.class_names = task_class_names(t);
  const auto id_of = [&](const std::string& n) {
    const auto it = std::find(out.class_names.begin(), out.class_names.end(), n);
    return static_cast<int>(it - out.class_names.begin());
  };
  for (std::size_t i = 0; i < nine.size(); ++i) {
    switch (t) {
      case Task::econ_binary: {
        const EconLabel e = to_economic(nine[i]);
        if (e == EconLabel::center) continue;
        out.rows.push_back(i);
        out.y.push_back(id_of(name(e)));
        break;
      }
      case Task::social_binary: {
        const SocialLabel s = to_social(nine[i]);
        if (s == SocialLabel::center) continue;
        out.rows.push_back(i);
        out.y.push_back(id_of(name(s)));
        break;
      }
      case Task::econ_3:
        out.rows.push_back(i);
        out.y.push_back(id_of(name(to_economic(nine[i]))));
        break;
      case Task::social_3:
        out.rows.push_back(i);
        out.y.push_back(id_of(name(to_social(nine[i]))));
        break;
      case Task::nine_class:
        out.rows.push_back(i);
        out.y.push_back(static_cast<int>(nine[i]));
        break;
    }
  }
  return out;
}

const char* feature_source_name(FeatureSource s) {
  switch (s) {
    case FeatureSource::interaction: return "interaction";
    case FeatureSource::text_tfidf: return "text_tfidf";
    case FeatureSource::text_embedding: return "text_embedding";
    case FeatureSource::text_combined: return "text_combined";
    case FeatureSource::combined: return "combined";
  }
  return "?";
}

FeatureSource parse_feature_source(const std::string& s) {
  for (const FeatureSource f :
       {FeatureSource::interaction, FeatureSource::text_tfidf, FeatureSource::text_embedding,
        FeatureSource::text_combined, FeatureSource::combined})
    if (s == feature_source_name(f)) return f;
  throw ConfigInvalid("unknown feature source: \"" + s + "\"");
}

SplitIndices split(std::size_t n, const SplitSpec& spec) {
  if (n < 5) throw TooFewRows("split: need at least 5 rows");
  const double ratios[3] = {spec.train, spec.val, spec.test};
  double sum = 0.0;
  for (const double r : ratios) {
    if (!(r > 0.0)) throw ConfigInvalid("split: ratios must be positive");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigInvalid("split: ratios must sum to 1");

  // Largest-remainder rounding of the three quotas.
  std::size_t sizes[3];
  double fracs[3];
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double quota = ratios[i] * static_cast<double>(n);
    sizes[i] = static_cast<std::size_t>(quota);
    fracs[i] = quota - static_cast<double>(sizes[i]);
    assigned += sizes[i];
  }
  int order[3] = {0, 1, 2};
  std::sort(order, order + 3, [&](int a, int b) {
    if (fracs[a] != fracs[b]) return fracs[a] > fracs[b];
    return a < b;
  });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++sizes[order[k % 3]];

  Rng rng(spec.seed);
  const auto perm = rng.permutation(n);
  SplitIndices out;
  out.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(sizes[0]));
  out.val.assign(perm.begin() + static_cast<std::ptrdiff_t>(sizes[0]),
                 perm.begin() + static_cast<std::ptrdiff_t>(sizes[0] + sizes[1]));
  out.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(sizes[0] + sizes[1]),
                  perm.end());
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.val.begin(), out.val.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

const char* model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::zeror: return "zeror";
    case ModelKind::logistic: return "logistic";
    case ModelKind::multinomial: return "multinomial";
    case ModelKind::ovr_logistic: return "ovr_logistic";
    case ModelKind::svc: return "svc";
    case ModelKind::ovr_svc: return "ovr_svc";
    case ModelKind::tree: return "tree";
    case ModelKind::forest: return "forest";
    case ModelKind::ovr_forest: return "ovr_forest";
    case ModelKind::adaboost: return "adaboost";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& s) {
  for (const ModelKind k :
       {ModelKind::zeror, ModelKind::logistic, ModelKind::multinomial,
        ModelKind::ovr_logistic, ModelKind::svc, ModelKind::ovr_svc, ModelKind::tree,
        ModelKind::forest, ModelKind::ovr_forest, ModelKind::adaboost})
    if (s == model_kind_name(k)) return k;
  throw ConfigInvalid("unknown model kind: \"" + s + "\"");
}

std::vector<ModelSpec> default_grid(ModelKind kind) {
  std::vector<ModelSpec> grid;
  const auto push = [&](ModelSpec s) {
    s.kind = kind;
    grid.push_back(s);
  };
  switch (kind) {
    case ModelKind::zeror:
      push({});
      break;
    case ModelKind::logistic:
    case ModelKind::multinomial:
    case ModelKind::ovr_logistic:
      for (const double lambda : {0.0, 0.01, 0.1, 1.0})
        for (const Weighting w : {Weighting::uniform, Weighting::balanced}) {
          ModelSpec s;
          s.lambda = lambda;
          s.weighting = w;
          push(s);
        }
      break;
    case ModelKind::svc:
    case ModelKind::ovr_svc:
      for (const double c : {0.01, 0.1, 1.0}) {
        ModelSpec s;
        s.c = c;
        push(s);
      }
      break;
    case ModelKind::tree:
      for (const Weighting w : {Weighting::uniform, Weighting::balanced}) {
        ModelSpec s;
        s.weighting = w;
        push(s);
      }
      break;
    case ModelKind::forest:
    case ModelKind::ovr_forest:
      for (const std::size_t trees : {std::size_t{100}})
        for (const Weighting w : {Weighting::uniform, Weighting::balanced}) {
          ModelSpec s;
          s.n_trees = trees;
          s.weighting = w;
          push(s);
        }
      break;
    case ModelKind::adaboost:
      for (const double eta : {0.5, 1.0})
        for (const Weighting w : {Weighting::uniform, Weighting::balanced}) {
          ModelSpec s;
          s.eta = eta;
          s.rounds = 50;
          s.weighting = w;
          push(s);
        }
      break;
  }
  return grid;
}

std::string spec_summary(const ModelSpec& spec) {
  std::ostringstream out;
  out << model_kind_name(spec.kind) << "(";
  switch (spec.kind) {
    case ModelKind::zeror:
      break;
    case ModelKind::logistic:
    case ModelKind::multinomial:
    case ModelKind::ovr_logistic:
      out << "lambda=" << fmt_double(spec.lambda) << ",weighting=" << name(spec.weighting);
      break;
    case ModelKind::svc:
    case ModelKind::ovr_svc:
      out << "c=" << fmt_double(spec.c);
      break;
    case ModelKind::tree:
      out << "weighting=" << name(spec.weighting);
      break;
    case ModelKind::forest:
    case ModelKind::ovr_forest:
      out << "trees=" << spec.n_trees << ",weighting=" << name(spec.weighting);
      break;
    case ModelKind::adaboost:
      out << "rounds=" << spec.rounds << ",eta=" << fmt_double(spec.eta)
          << ",weighting=" << name(spec.weighting);
      break;
  }
  out << ")";
  return out.str();
}

AnyModel fit_model(const ModelSpec& spec, const DenseMatrix& x, const std::vector<int>& y,
                   std::size_t n_classes, std::uint64_t seed, std::size_t n_threads) {
  switch (spec.kind) {
    case ModelKind::zeror:
      return zeror_fit(y, n_classes);
    case ModelKind::logistic: {
      if (n_classes != 2)
        throw ConfigInvalid("logistic requires a binary task; use ovr_logistic");
      LogisticConfig cfg;
      cfg.lambda = spec.lambda;
      cfg.weighting = spec.weighting;
      return logistic_fit(x, y, cfg);
    }
    case ModelKind::multinomial: {
      MultinomialConfig cfg;
      cfg.lambda = spec.lambda;
      cfg.weighting = spec.weighting;
      return multinomial_fit(x, y, n_classes, cfg);
    }
    case ModelKind::ovr_logistic: {
      LogisticConfig cfg;
      cfg.lambda = spec.lambda;
      cfg.weighting = spec.weighting;
      return ovr_logistic_fit(x, y, n_classes, cfg, n_threads);
    }
    case ModelKind::svc: {
      if (n_classes != 2) throw ConfigInvalid("svc requires a binary task; use ovr_svc");
      SvcConfig cfg;
      cfg.c = spec.c;
      std::vector<int> pm(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) pm[i] = y[i] == 1 ? 1 : -1;
      return linear_svc_fit(x, pm, cfg);
    }
    case ModelKind::ovr_svc: {
      SvcConfig cfg;
      cfg.c = spec.c;
      return ovr_svc_fit(x, y, n_classes, cfg, n_threads);
    }
    case ModelKind::tree:
      return tree_fit(x, y, n_classes, spec.weighting, TreeConfig{});
    case ModelKind::forest: {
      ForestConfig cfg;
      cfg.n_trees = spec.n_trees;
      cfg.weighting = spec.weighting;
      cfg.seed = seed;
      cfg.n_threads = n_threads;
      return forest_fit(x, y, n_classes, cfg);
    }
    case ModelKind::ovr_forest: {
      ForestConfig cfg;
      cfg.n_trees = spec.n_trees;
      cfg.weighting = spec.weighting;
      cfg.seed = seed;
      cfg.n_threads = n_threads;
      return ovr_forest_fit(x, y, n_classes, cfg);
    }
    case ModelKind::adaboost: {
      AdaBoostConfig cfg;
      cfg.rounds = spec.rounds;
      cfg.eta = spec.eta;
      cfg.weighting = spec.weighting;
      cfg.seed = seed;
      return adaboost_fit(x, y, n_classes, cfg);
    }
  }
  throw ConfigInvalid("fit_model: unhandled model kind");
}

namespace {

void validate_inputs(const ExperimentInputs& in, bool needs_text, bool needs_embeddings) {
  if (in.users.size() != in.interactions.rows)
    throw LengthMismatch("experiment inputs: user count != matrix rows");
  if (in.labels.size() != in.users.size())
    throw LengthMismatch("experiment inputs: label count != user count");
  if (needs_text && in.tokens.size() != in.users.size())
    throw LengthMismatch("experiment inputs: token lists required for text features");
  if (needs_embeddings && in.embeddings == nullptr)
    throw ConfigInvalid("experiment inputs: embedding table required");
}

bool source_needs_text(FeatureSource s) { return s != FeatureSource::interaction; }

bool source_needs_embeddings(FeatureSource s) {
  return s == FeatureSource::text_embedding || s == FeatureSource::text_combined;
}

std::vector<std::vector<std::string>> gather_docs(const ExperimentInputs& in,
                                                  const std::vector<std::size_t>& rows) {
  std::vector<std::vector<std::string>> docs;
  docs.reserve(rows.size());
  for (const std::size_t r : rows) docs.push_back(in.tokens[r]);
  return docs;
}

}  // namespace

FeaturePipeline::FeaturePipeline(FeatureSpec spec, std::uint64_t seed)
    : spec_(spec), seed_(seed) {}

void FeaturePipeline::fit(const ExperimentInputs& in,
                          const std::vector<std::size_t>& fit_rows) {
  if (fitted_) throw ConfigInvalid("feature pipeline: already fitted; refit rejected");
  validate_inputs(in, source_needs_text(spec_.source),
                  source_needs_embeddings(spec_.source));
  if (fit_rows.empty()) throw EmptyTrainingSet("feature pipeline: no fitting rows");
  for (const std::size_t r : fit_rows)
    if (r >= in.users.size()) throw DimensionError("feature pipeline: row out of range");

  const bool uses_tfidf = spec_.source == FeatureSource::text_tfidf ||
                          spec_.source == FeatureSource::text_combined ||
                          spec_.source == FeatureSource::combined;
  if (uses_tfidf)
    tfidf_ = tfidf_fit(gather_docs(in, fit_rows), spec_.max_df, spec_.min_df,
                       spec_.max_features);

  // Record the fitting rows before the heavy lifting so assemble() can rely
  // on the trained sub-states but transform() stays locked until done.
  fit_rows_ = fit_rows;

  switch (spec_.source) {
    case FeatureSource::interaction: {
      if (spec_.svd_q) {
        CsrMatrix sel = in.interactions.select_rows(fit_rows);
        if (spec_.binarize) sel = sel.binarized();
        svd_ = svd(sel, *spec_.svd_q, seed_);
      }
      break;
    }
    case FeatureSource::text_tfidf: {
      if (spec_.svd_q) {
        const CsrMatrix t = tfidf_transform(*tfidf_, gather_docs(in, fit_rows));
        svd_ = svd(t, *spec_.svd_q, seed_);
      }
      break;
    }
    case FeatureSource::text_embedding: {
      if (spec_.svd_q) {
        const FeatureBlock b = embed_documents(gather_docs(in, fit_rows), *in.embeddings);
        svd_ = svd_dense(b.x, *spec_.svd_q, seed_);
      }
      break;
    }
    case FeatureSource::text_combined:
    case FeatureSource::combined: {
      const FeatureBlock raw = assemble(in, fit_rows);
      scaler_ = RangeScaler::fit(raw);
      if (spec_.svd_q) {
        const FeatureBlock scaled = scaler_->transform(raw);
        svd_ = svd_dense(scaled.x, *spec_.svd_q, seed_);
      }
      break;
    }
  }
  fitted_ = true;
}

// The unscaled concatenation for the scaled sources.
FeatureBlock FeaturePipeline::assemble(const ExperimentInputs& in,
                                       const std::vector<std::size_t>& rows) const {
  std::vector<FeatureBlock> blocks;
  if (spec_.source == FeatureSource::combined) {
    CsrMatrix sel = in.interactions.select_rows(rows);
    if (spec_.binarize) sel = sel.binarized();
    blocks.push_back(block_from_csr(sel, Provenance::raw));
  }
  const auto docs = gather_docs(in, rows);
  blocks.push_back(block_from_csr(tfidf_transform(*tfidf_, docs), Provenance::tfidf));
  if (in.embeddings != nullptr) blocks.push_back(embed_documents(docs, *in.embeddings));
  return hconcat(blocks);
}

DenseMatrix FeaturePipeline::transform(const ExperimentInputs& in,
                                       const std::vector<std::size_t>& rows) const {
  if (!fitted_) throw ConfigInvalid("feature pipeline: transform before fit");
  validate_inputs(in, source_needs_text(spec_.source),
                  source_needs_embeddings(spec_.source));
  for (const std::size_t r : rows)
    if (r >= in.users.size()) throw DimensionError("feature pipeline: row out of range");

  switch (spec_.source) {
    case FeatureSource::interaction: {
      CsrMatrix sel = in.interactions.select_rows(rows);
      if (spec_.binarize) sel = sel.binarized();
      if (svd_) return project(sel, *svd_).x;
      return block_from_csr(sel, Provenance::raw).x;
    }
    case FeatureSource::text_tfidf: {
      const CsrMatrix t = tfidf_transform(*tfidf_, gather_docs(in, rows));
      if (svd_) return project(t, *svd_).x;
      return block_from_csr(t, Provenance::tfidf).x;
    }
    case FeatureSource::text_embedding: {
      FeatureBlock b = embed_documents(gather_docs(in, rows), *in.embeddings);
      if (svd_) return project(b, *svd_).x;
      return std::move(b.x);
    }
    case FeatureSource::text_combined:
    case FeatureSource::combined: {
      FeatureBlock b = scaler_->transform(assemble(in, rows));
      if (svd_) return project(b, *svd_).x;
      return std::move(b.x);
    }
  }
  throw ConfigInvalid("feature pipeline: unhandled source");
}

namespace {

std::vector<std::size_t> to_global(const std::vector<std::size_t>& task_rows,
                                   const std::vector<std::size_t>& part) {
  std::vector<std::size_t> out;
  out.reserve(part.size());
  for (const std::size_t i : part) out.push_back(task_rows[i]);
  return out;
}

std::vector<int> gather_y(const std::vector<int>& y, const std::vector<std::size_t>& part) {
  std::vector<int> out;
  out.reserve(part.size());
  for (const std::size_t i : part) out.push_back(y[i]);
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentInputs& in, const ExperimentConfig& cfg) {
  const TaskLabels tl = task_labels(in.labels, cfg.task);
  const std::size_t k = tl.class_names.size();
  SplitSpec split_spec = cfg.split;
  split_spec.seed = derive_seed(cfg.seed, 0);
  const SplitIndices parts = split(tl.rows.size(), split_spec);

  FeaturePipeline features(cfg.features, derive_seed(cfg.seed, 1));
  features.fit(in, to_global(tl.rows, parts.train));

  const DenseMatrix x_train = features.transform(in, to_global(tl.rows, parts.train));
  const DenseMatrix x_val = features.transform(in, to_global(tl.rows, parts.val));
  const DenseMatrix x_test = features.transform(in, to_global(tl.rows, parts.test));
  const std::vector<int> y_train = gather_y(tl.y, parts.train);
  const std::vector<int> y_val = gather_y(tl.y, parts.val);
  const std::vector<int> y_test = gather_y(tl.y, parts.test);

  const std::vector<ModelSpec> grid =
      cfg.grid.empty() ? default_grid(cfg.grid_kind) : cfg.grid;
  if (grid.empty()) throw ConfigInvalid("run_experiment: empty model grid");

  ExperimentResult result;
  result.n_rows = tl.rows.size();
  result.grid.resize(grid.size());
  // Configs fit in parallel on the training rows; every config owns the
  // derived stream (seed, 100 + index) so the outcome ignores n_threads.
  parallel_for(grid.size(), cfg.n_threads, [&](std::size_t g) {
    GridOutcome& out = result.grid[g];
    out.spec = grid[g];
    try {
      const AnyModel m = fit_model(grid[g], x_train, y_train, k,
                                   derive_seed(cfg.seed, 100 + g), 1);
      out.val_accuracy = accuracy(y_val, predict_any(m, x_val));
      out.ok = true;
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
    }
  });

  std::size_t best = grid.size();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (!result.grid[g].ok) continue;
    if (best == grid.size() || result.grid[g].val_accuracy > result.grid[best].val_accuracy)
      best = g;
  }
  if (best == grid.size())
    throw ConfigInvalid("run_experiment: every grid config failed to fit");
  result.chosen = grid[best];

  // Refit the winner on train+val with the transforms still frozen on train.
  std::vector<std::size_t> tv;
  tv.reserve(parts.train.size() + parts.val.size());
  std::merge(parts.train.begin(), parts.train.end(), parts.val.begin(), parts.val.end(),
             std::back_inserter(tv));
  const DenseMatrix x_tv = features.transform(in, to_global(tl.rows, tv));
  const std::vector<int> y_tv = gather_y(tl.y, tv);
  AnyModel final_model =
      fit_model(result.chosen, x_tv, y_tv, k, derive_seed(cfg.seed, 2), cfg.n_threads);

  const std::vector<int> yhat = predict_any(final_model, x_test);
  EvalReport& report = result.report;
  report.class_names = tl.class_names;
  report.accuracy = accuracy(y_test, yhat);
  report.confusion = confusion(y_test, yhat, k);
  report.n_train = parts.train.size();
  report.n_val = parts.val.size();
  report.n_test = parts.test.size();
  report.prevalence.assign(k, 0.0);
  for (const int c : y_test) report.prevalence[static_cast<std::size_t>(c)] += 1.0;
  for (double& p : report.prevalence) p /= static_cast<double>(y_test.size());

  if (const auto scores = scores_any(final_model, x_test)) {
    try {
      const WeightedAuc wa = weighted_ovr_auc(*scores, y_test);
      report.auc = wa.overall;
      report.per_class_auc = wa.per_class;
    } catch (const MissingClass&) {
      // A class absent from the test set leaves the AUC undefined.
    }
  }

  const ZeroRModel baseline = zeror_fit(y_tv, k);
  result.baseline_accuracy = accuracy(y_test, zeror_predict(baseline, y_test.size()));
  result.baseline = SavedModel{baseline, tl.class_names};
  result.model = SavedModel{std::move(final_model), tl.class_names};
  return result;
}

}  // namespace ideolab
