// Command-line front end: every subcommand loads file artifacts, calls one
// library operation, and writes file artifacts back. All randomness flows
// from the --seed / config seed, so identical invocations produce
// byte-identical outputs. Exit codes: 0 ok, 1 usage, 2 data/model error.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ideolab/boruta.hpp"
#include "ideolab/csv.hpp"
#include "ideolab/errors.hpp"
#include "ideolab/eval.hpp"
#include "ideolab/io.hpp"
#include "ideolab/model_json.hpp"
#include "ideolab/pipeline.hpp"
#include "ideolab/rng.hpp"
#include "ideolab/sampling_study.hpp"
#include "ideolab/synth.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace ideolab;

namespace {

// The resolved configuration every run prints; reports embed the same object.
void echo_config(const ordered_json& cfg) { std::cout << cfg.dump(2) << "\n"; }

std::string path_in(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

// Dense features from either container: a sparse matrix file is densified,
// a feature/SVD JSON is taken as is.
NamedFeatures load_dense_features(const std::string& path) {
  {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    char head[2] = {0, 0};
    in.read(head, 2);
    if (in.gcount() == 2 && head[0] == '%' && head[1] == '%') {
      const NamedMatrix m = read_matrix(path);
      NamedFeatures f;
      f.block = block_from_csr(m.m, Provenance::raw);
      f.row_names = m.row_names;
      f.col_names = m.col_names;
      return f;
    }
  }
  return read_features(path);
}

// Cleaned, stemmed token list per user, comments concatenated first.
std::vector<std::vector<std::string>> tokens_for_users(
    const std::vector<std::string>& users, const CommentsFile& comments) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < comments.usernames.size(); ++i)
    index.emplace(comments.usernames[i], i);
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(users.size());
  for (const std::string& u : users) {
    const auto it = index.find(u);
    if (it == index.end()) throw UnknownLabel("no comments for user: \"" + u + "\"");
    std::string joined;
    for (const std::string& c : comments.comments[it->second]) {
      if (!joined.empty()) joined.push_back('\n');
      joined += c;
    }
    tokens.push_back(clean(joined));
  }
  return tokens;
}

Task task_from_class_names(const std::vector<std::string>& class_names) {
  for (const Task t : {Task::econ_binary, Task::social_binary, Task::econ_3,
                       Task::social_3, Task::nine_class})
    if (task_class_names(t) == class_names) return t;
  throw ConfigInvalid("model class names match no known task");
}

ordered_json model_spec_json(const ModelSpec& s) {
  ordered_json j;
  j["kind"] = model_kind_name(s.kind);
  j["summary"] = spec_summary(s);
  switch (s.kind) {
    case ModelKind::zeror:
      break;
    case ModelKind::logistic:
    case ModelKind::multinomial:
    case ModelKind::ovr_logistic:
      j["lambda"] = s.lambda;
      j["weighting"] = name(s.weighting);
      break;
    case ModelKind::svc:
    case ModelKind::ovr_svc:
      j["c"] = s.c;
      break;
    case ModelKind::tree:
      j["weighting"] = name(s.weighting);
      break;
    case ModelKind::forest:
    case ModelKind::ovr_forest:
      j["trees"] = s.n_trees;
      j["weighting"] = name(s.weighting);
      break;
    case ModelKind::adaboost:
      j["rounds"] = s.rounds;
      j["eta"] = s.eta;
      j["weighting"] = name(s.weighting);
      break;
  }
  return j;
}

ModelSpec model_spec_from_json(const ordered_json& j) {
  ModelSpec s;
  s.kind = parse_model_kind(j.at("kind").get<std::string>());
  s.lambda = j.value("lambda", s.lambda);
  s.c = j.value("c", s.c);
  s.eta = j.value("eta", s.eta);
  s.rounds = j.value("rounds", s.rounds);
  s.n_trees = j.value("trees", s.n_trees);
  if (j.contains("weighting")) s.weighting = parse_weighting(j["weighting"]);
  return s;
}

ordered_json feature_spec_json(const FeatureSpec& f) {
  ordered_json j;
  j["source"] = feature_source_name(f.source);
  j["binarize"] = f.binarize;
  if (f.svd_q)
    j["svd_q"] = *f.svd_q;
  else
    j["svd_q"] = nullptr;
  j["min_df"] = f.min_df;
  j["max_df"] = f.max_df;
  j["max_features"] = f.max_features;
  return j;
}

FeatureSpec feature_spec_from_json(const ordered_json& j) {
  FeatureSpec f;
  f.source = parse_feature_source(j.value("source", std::string("interaction")));
  f.binarize = j.value("binarize", f.binarize);
  if (j.contains("svd_q") && !j["svd_q"].is_null())
    f.svd_q = j["svd_q"].get<std::size_t>();
  f.min_df = j.value("min_df", f.min_df);
  f.max_df = j.value("max_df", f.max_df);
  f.max_features = j.value("max_features", f.max_features);
  return f;
}

void write_history_csv(const std::string& path,
                       const std::vector<InteractionRecord>& records) {
  std::string text = "username,interaction,title,score,time,subreddit\n";
  for (const InteractionRecord& r : records) {
    text += csv_escape(r.username);
    text += r.kind == InteractionKind::post ? ",post," : ",comment,";
    text += csv_escape(r.title ? *r.title : "");
    text += ",";
    text += std::to_string(r.score);
    text += ",";
    text += csv_escape(r.time);
    text += ",";
    text += csv_escape(r.subreddit);
    text += "\n";
  }
  write_text_file(path, text);
}

// Plumbing vectors for the synthetic vocabulary: reproducible noise, no
// label signal of their own (signal enters through word frequencies).
void write_noise_embeddings(const std::string& path,
                            const std::vector<std::string>& vocabulary,
                            std::size_t dim, std::uint64_t seed) {
  std::string text;
  for (std::size_t w = 0; w < vocabulary.size(); ++w) {
    Rng rng = Rng::derived(seed, w);
    text += vocabulary[w];
    for (std::size_t d = 0; d < dim; ++d) {
      text += " ";
      text += fmt_double(2.0 * rng.uniform() - 1.0);
    }
    text += "\n";
  }
  write_text_file(path, text);
}

ordered_json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(what + ": " + e.what());
  }
}

// ---- subcommand bodies ----

void cmd_synth(const std::string& config_path, const std::string& out_dir) {
  SynthConfig cfg;
  std::size_t embedding_dim = 16;
  if (!config_path.empty()) {
    const ordered_json j = parse_json_text(read_text_file(config_path), config_path);
    cfg.n_users = j.value("users", cfg.n_users);
    cfg.n_subreddits = j.value("subreddits", cfg.n_subreddits);
    cfg.n_informative = j.value("informative", cfg.n_informative);
    cfg.signal_strength = j.value("signal", cfg.signal_strength);
    cfg.base_rate = j.value("base_rate", cfg.base_rate);
    if (j.contains("label_scheme"))
      cfg.label_scheme = parse_label_scheme(j["label_scheme"]);
    cfg.vocab_size = j.value("vocab", cfg.vocab_size);
    cfg.words_per_user = j.value("words_per_user", cfg.words_per_user);
    cfg.seed = j.value("seed", cfg.seed);
    embedding_dim = j.value("embedding_dim", embedding_dim);
  }

  ordered_json echo;
  echo["command"] = "synth";
  echo["users"] = cfg.n_users;
  echo["subreddits"] = cfg.n_subreddits;
  echo["informative"] = cfg.n_informative;
  echo["signal"] = cfg.signal_strength;
  echo["base_rate"] = cfg.base_rate;
  echo["label_scheme"] = name(cfg.label_scheme);
  echo["vocab"] = cfg.vocab_size;
  echo["words_per_user"] = cfg.words_per_user;
  echo["embedding_dim"] = embedding_dim;
  echo["seed"] = cfg.seed;
  echo["out"] = out_dir;
  echo_config(echo);

  const SynthCorpus corpus = generate_synth(cfg);
  fs::create_directories(out_dir);
  write_history_csv(path_in(out_dir, "history.csv"), corpus.records);
  write_flairs(path_in(out_dir, "flairs.csv"), corpus.users, corpus.raw_flairs);
  write_comments(path_in(out_dir, "comments.jsonl"),
                 CommentsFile{corpus.users, corpus.comments});
  write_matrix(path_in(out_dir, "interactions.mtx"),
               NamedMatrix{corpus.interactions.matrix, corpus.interactions.users,
                           corpus.interactions.subreddits, "users", "subreddits"});
  write_noise_embeddings(path_in(out_dir, "embeddings.txt"), corpus.vocabulary,
                         embedding_dim, derive_seed(cfg.seed, 901));

  ordered_json truth;
  truth["config"] = echo;
  for (const PlantedSignal& s : corpus.informative_subreddits) {
    ordered_json e;
    e["index"] = s.index;
    e["name"] = corpus.interactions.subreddits[s.index];
    e["axis"] = s.axis == 0 ? "econ" : "social";
    e["polarity"] = s.polarity;
    truth["informative_subreddits"].push_back(e);
  }
  for (const PlantedSignal& s : corpus.informative_words) {
    ordered_json e;
    e["index"] = s.index;
    e["name"] = corpus.vocabulary[s.index];
    e["axis"] = s.axis == 0 ? "econ" : "social";
    e["polarity"] = s.polarity;
    truth["informative_words"].push_back(e);
  }
  write_text_file(path_in(out_dir, "synth.json"), truth.dump(2) + "\n");
}

void cmd_ingest(const std::string& history_path, const std::string& flairs_path,
                const std::string& out_dir, double min_user, double min_sub,
                bool binarize_counts, std::size_t chunk_size) {
  ordered_json echo;
  echo["command"] = "ingest";
  echo["history"] = history_path;
  echo["flairs"] = flairs_path;
  echo["min_user"] = min_user;
  echo["min_sub"] = min_sub;
  echo["binarize"] = binarize_counts;
  echo["chunk_size"] = chunk_size;
  echo["out"] = out_dir;
  echo_config(echo);

  std::ifstream in(history_path);
  if (!in) throw IoError("cannot open " + history_path);
  const auto records = parse_history(in);
  InteractionMatrix m = pivot_chunked(records, chunk_size);
  m = remove_political(m);

  // Only users with a flair can be modelled; drop the rest before trimming
  // so the activity thresholds apply to the labelled population.
  const FlairFile flairs = read_flairs(flairs_path);
  const std::unordered_set<std::string> flaired(flairs.usernames.begin(),
                                                flairs.usernames.end());
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < m.users.size(); ++i)
    if (flaired.count(m.users[i])) keep.push_back(i);
  InteractionMatrix joined;
  joined.matrix = m.matrix.select_rows(keep);
  joined.subreddits = m.subreddits;
  for (const std::size_t i : keep) joined.users.push_back(m.users[i]);

  InteractionMatrix trimmed = trim(joined, min_user, min_sub);
  if (binarize_counts) trimmed = binarize(trimmed);

  fs::create_directories(out_dir);
  write_matrix(path_in(out_dir, "interactions.mtx"),
               NamedMatrix{trimmed.matrix, trimmed.users, trimmed.subreddits, "users",
                           "subreddits"});
  std::cout << "rows " << trimmed.matrix.rows << " cols " << trimmed.matrix.cols
            << " nnz " << trimmed.matrix.nnz() << "\n";
}

void cmd_featurize(const std::string& comments_path, const std::string& mode,
                   std::size_t max_features, double min_df, double max_df,
                   const std::string& embeddings_path, const std::string& out_dir) {
  ordered_json echo;
  echo["command"] = "featurize";
  echo["comments"] = comments_path;
  echo["mode"] = mode;
  echo["max_features"] = max_features;
  echo["min_df"] = min_df;
  echo["max_df"] = max_df;
  echo["embeddings"] = embeddings_path;
  echo["out"] = out_dir;
  echo_config(echo);

  const CommentsFile comments = read_comments(comments_path);
  const auto docs = tokens_for_users(comments.usernames, comments);
  fs::create_directories(out_dir);

  if (mode == "tfidf" || mode == "both") {
    const TfidfModel model = tfidf_fit(docs, max_df, min_df, max_features);
    write_matrix(path_in(out_dir, "tfidf.mtx"),
                 NamedMatrix{tfidf_transform(model, docs), comments.usernames,
                             model.vocabulary, "users", "terms"});
  }
  if (mode == "w2v" || mode == "both") {
    if (embeddings_path.empty())
      throw ConfigInvalid("mode " + mode + " requires --embeddings");
    std::ifstream in(embeddings_path);
    if (!in) throw IoError("cannot open " + embeddings_path);
    const EmbeddingTable table = read_embeddings(in);
    write_features(path_in(out_dir, "embedding_features.json"),
                   NamedFeatures{embed_documents(docs, table), comments.usernames, {}});
  }
}

void cmd_svd(const std::string& matrix_path, std::size_t q, std::uint64_t seed,
             const std::string& out_path) {
  ordered_json echo;
  echo["command"] = "svd";
  echo["matrix"] = matrix_path;
  echo["q"] = q;
  echo["seed"] = seed;
  echo["out"] = out_path;
  echo_config(echo);

  const NamedMatrix m = read_matrix(matrix_path);
  write_svd(out_path, SvdFile{svd(m.m, q, seed), m.row_names});
}

void cmd_train(const std::string& features_path, const std::string& labels_path,
               const std::string& task_name_str, const ModelSpec& spec,
               std::uint64_t seed, std::size_t threads, const std::string& out_path) {
  ordered_json echo;
  echo["command"] = "train";
  echo["features"] = features_path;
  echo["labels"] = labels_path;
  echo["task"] = task_name_str;
  echo["model"] = model_spec_json(spec);
  echo["seed"] = seed;
  echo["threads"] = threads;
  echo["out"] = out_path;
  echo_config(echo);

  const NamedFeatures f = load_dense_features(features_path);
  const std::vector<NineClass> labels = join_labels(f.row_names, read_flairs(labels_path));
  const Task task = parse_task(task_name_str);
  const TaskLabels tl = task_labels(labels, task);

  DenseMatrix x(tl.rows.size(), f.block.x.cols);
  for (std::size_t i = 0; i < tl.rows.size(); ++i)
    std::ranges::copy(f.block.x.row(tl.rows[i]), x.row(i).begin());

  const AnyModel model =
      fit_model(spec, x, tl.y, tl.class_names.size(), seed, threads);
  save_model(out_path, SavedModel{model, tl.class_names});
  std::cout << "trained " << model_kind_name(spec.kind) << " on " << tl.rows.size()
            << " rows\n";
}

void cmd_eval(const std::string& model_path, const std::string& features_path,
              const std::string& labels_path, const std::string& out_path) {
  ordered_json echo;
  echo["command"] = "eval";
  echo["model"] = model_path;
  echo["features"] = features_path;
  echo["labels"] = labels_path;
  echo["out"] = out_path;
  echo_config(echo);

  const SavedModel saved = load_model(model_path);
  const NamedFeatures f = load_dense_features(features_path);
  const std::vector<NineClass> labels = join_labels(f.row_names, read_flairs(labels_path));
  const Task task = task_from_class_names(saved.class_names);
  const TaskLabels tl = task_labels(labels, task);
  if (tl.rows.empty()) throw TooFewRows("eval: no rows participate in the task");

  DenseMatrix x(tl.rows.size(), f.block.x.cols);
  for (std::size_t i = 0; i < tl.rows.size(); ++i)
    std::ranges::copy(f.block.x.row(tl.rows[i]), x.row(i).begin());

  EvalReport report;
  report.class_names = saved.class_names;
  const std::vector<int> yhat = predict_any(saved.model, x);
  report.accuracy = accuracy(tl.y, yhat);
  report.confusion = confusion(tl.y, yhat, saved.class_names.size());
  report.n_test = tl.rows.size();
  report.prevalence.assign(saved.class_names.size(), 0.0);
  for (const int c : tl.y) report.prevalence[static_cast<std::size_t>(c)] += 1.0;
  for (double& p : report.prevalence) p /= static_cast<double>(tl.y.size());
  if (const auto scores = scores_any(saved.model, x)) {
    try {
      const WeightedAuc wa = weighted_ovr_auc(*scores, tl.y);
      report.auc = wa.overall;
      report.per_class_auc = wa.per_class;
    } catch (const MissingClass&) {
    }
  }

  ordered_json out = parse_json_text(report_json_text(report), "report");
  out["config"] = echo;
  write_text_file(out_path, out.dump(2) + "\n");
  std::cout << "accuracy " << fmt_double(report.accuracy) << "\n";
}

ExperimentConfig experiment_config_from_json(const ordered_json& j) {
  ExperimentConfig cfg;
  cfg.task = parse_task(j.value("task", std::string("econ_binary")));
  if (j.contains("features")) cfg.features = feature_spec_from_json(j["features"]);
  if (j.contains("grid"))
    for (const auto& g : j["grid"]) cfg.grid.push_back(model_spec_from_json(g));
  cfg.grid_kind = parse_model_kind(j.value("model", std::string("logistic")));
  if (j.contains("split")) {
    cfg.split.train = j["split"].value("train", cfg.split.train);
    cfg.split.val = j["split"].value("val", cfg.split.val);
    cfg.split.test = j["split"].value("test", cfg.split.test);
  }
  cfg.seed = j.value("seed", cfg.seed);
  cfg.n_threads = j.value("threads", cfg.n_threads);
  return cfg;
}

void cmd_experiment(const std::string& config_path, const std::string& out_dir_flag,
                    std::optional<std::uint64_t> seed_flag,
                    std::optional<std::size_t> threads_flag) {
  const ordered_json j = parse_json_text(read_text_file(config_path), config_path);
  ExperimentConfig cfg = experiment_config_from_json(j);
  if (seed_flag) cfg.seed = *seed_flag;
  if (threads_flag) cfg.n_threads = *threads_flag;
  std::string out_dir = j.value("out_dir", std::string("."));
  if (!out_dir_flag.empty()) out_dir = out_dir_flag;
  if (!j.contains("data") || !j["data"].contains("matrix") ||
      !j["data"].contains("flairs"))
    throw ConfigInvalid("experiment config: data.matrix and data.flairs are required");
  const std::string matrix_path = j["data"]["matrix"];
  const std::string flairs_path = j["data"]["flairs"];
  const std::string comments_path = j["data"].value("comments", std::string());
  const std::string embeddings_path = j["data"].value("embeddings", std::string());

  ordered_json echo;
  echo["command"] = "experiment";
  echo["task"] = task_name(cfg.task);
  echo["features"] = feature_spec_json(cfg.features);
  if (cfg.grid.empty()) {
    echo["model"] = model_kind_name(cfg.grid_kind);
  } else {
    for (const ModelSpec& s : cfg.grid) echo["grid"].push_back(model_spec_json(s));
  }
  echo["split"] = {{"train", cfg.split.train}, {"val", cfg.split.val},
                   {"test", cfg.split.test}};
  echo["seed"] = cfg.seed;
  echo["threads"] = cfg.n_threads;
  echo["data"] = {{"matrix", matrix_path},
                  {"flairs", flairs_path},
                  {"comments", comments_path},
                  {"embeddings", embeddings_path}};
  echo["out_dir"] = out_dir;
  echo_config(echo);

  const NamedMatrix m = read_matrix(matrix_path);
  ExperimentInputs inputs;
  inputs.interactions = m.m;
  inputs.users = m.row_names;
  inputs.labels = join_labels(m.row_names, read_flairs(flairs_path));
  EmbeddingTable table;
  if (cfg.features.source != FeatureSource::interaction) {
    if (comments_path.empty())
      throw ConfigInvalid("experiment config: text features need data.comments");
    inputs.tokens = tokens_for_users(m.row_names, read_comments(comments_path));
  }
  if (!embeddings_path.empty()) {
    std::ifstream in(embeddings_path);
    if (!in) throw IoError("cannot open " + embeddings_path);
    table = read_embeddings(in);
    inputs.embeddings = &table;
  }

  const ExperimentResult result = run_experiment(inputs, cfg);

  ordered_json out;
  out["config"] = echo;
  out["n_rows"] = result.n_rows;
  out["chosen"] = model_spec_json(result.chosen);
  for (const GridOutcome& g : result.grid) {
    ordered_json e;
    e["spec"] = spec_summary(g.spec);
    e["ok"] = g.ok;
    if (g.ok)
      e["val_accuracy"] = g.val_accuracy;
    else
      e["error"] = g.error;
    out["grid"].push_back(e);
  }
  out["baseline_accuracy"] = result.baseline_accuracy;
  out["report"] = parse_json_text(report_json_text(result.report), "report");

  fs::create_directories(out_dir);
  write_text_file(path_in(out_dir, "report.json"), out.dump(2) + "\n");
  save_model(path_in(out_dir, "model.json"), result.model);

  std::string csv = "Model,Accuracy,AUC,N\n";
  csv += csv_escape(spec_summary(result.chosen)) + "," +
         fmt_double(result.report.accuracy) + "," +
         (result.report.auc ? fmt_double(*result.report.auc) : std::string()) + "," +
         std::to_string(result.n_rows) + "\n";
  csv += "zeror()," + fmt_double(result.baseline_accuracy) + ",," +
         std::to_string(result.n_rows) + "\n";
  write_text_file(path_in(out_dir, "summary.csv"), csv);
  std::cout << "accuracy " << fmt_double(result.report.accuracy) << " baseline "
            << fmt_double(result.baseline_accuracy) << "\n";
}

void cmd_sample_study(const std::string& matrix_path, const std::string& labels_path,
                      const SamplingStudySpec& spec, const std::string& out_path) {
  ordered_json echo;
  echo["command"] = "sample-study";
  echo["matrix"] = matrix_path;
  echo["labels"] = labels_path;
  echo["task"] = task_name(spec.task);
  echo["sizes"] = spec.sizes;
  echo["min_unique"] = spec.min_unique;
  echo["lambda"] = spec.lambda;
  echo["weighting"] = name(spec.weighting);
  echo["seed"] = spec.seed;
  echo["out"] = out_path;
  echo_config(echo);

  const NamedMatrix m = read_matrix(matrix_path);
  const std::vector<NineClass> labels = join_labels(m.row_names, read_flairs(labels_path));
  const SamplingStudyResult result = restricted_sampling_study(m.m, labels, spec);

  ordered_json out;
  out["config"] = echo;
  out["class_names"] = result.class_names;
  out["n_users"] = result.kept_rows.size();
  out["n_train"] = result.n_train;
  out["n_test"] = result.n_test;
  for (std::size_t i = 0; i < result.sizes.size(); ++i) {
    ordered_json e;
    e["k"] = result.sizes[i];
    e["accuracy"] = result.accuracy[i];
    out["results"].push_back(e);
  }
  write_text_file(out_path, out.dump(2) + "\n");
}

void cmd_boruta(const std::string& matrix_path, const std::string& labels_path,
                const std::string& task_name_str, std::size_t trees, std::uint64_t seed,
                const std::string& out_path, const std::string& report_path) {
  ordered_json echo;
  echo["command"] = "boruta";
  echo["matrix"] = matrix_path;
  echo["labels"] = labels_path;
  echo["task"] = task_name_str;
  echo["trees"] = trees;
  echo["seed"] = seed;
  echo["out"] = out_path;
  echo_config(echo);

  const NamedMatrix m = read_matrix(matrix_path);
  const std::vector<NineClass> labels = join_labels(m.row_names, read_flairs(labels_path));
  const TaskLabels tl = task_labels(labels, parse_task(task_name_str));

  const FeatureBlock all = block_from_csr(m.m, Provenance::raw);
  FeatureBlock x;
  x.provenance = all.provenance;
  x.x = DenseMatrix(tl.rows.size(), all.x.cols);
  for (std::size_t i = 0; i < tl.rows.size(); ++i)
    std::ranges::copy(all.x.row(tl.rows[i]), x.x.row(i).begin());

  ForestConfig forest_cfg;
  forest_cfg.n_trees = trees;
  const BorutaResult result =
      boruta_select(x, tl.y, tl.class_names.size(), forest_cfg, seed);

  std::vector<std::string> selected;
  for (const std::size_t j : result.selected) selected.push_back(m.col_names[j]);
  write_lines(out_path, selected);
  std::cout << "selected " << selected.size() << " of " << m.col_names.size()
            << " features\n";

  if (!report_path.empty()) {
    ordered_json out;
    out["config"] = echo;
    out["shadow_max"] = result.shadow_max;
    out["selected"] = selected;
    for (std::size_t j = 0; j < m.col_names.size(); ++j) {
      ordered_json e;
      e["feature"] = m.col_names[j];
      e["importance"] = result.importances[j];
      e["shadow_importance"] = result.shadow_importances[j];
      out["features"].push_back(e);
    }
    write_text_file(report_path, out.dump(2) + "\n");
  }
}

void cmd_correlate(const std::string& matrix_path, const std::string& labels_path,
                   const std::string& axis, const std::string& out_path) {
  ordered_json echo;
  echo["command"] = "correlate";
  echo["matrix"] = matrix_path;
  echo["labels"] = labels_path;
  echo["axis"] = axis;
  echo["out"] = out_path;
  echo_config(echo);

  const NamedMatrix m = read_matrix(matrix_path);
  const std::vector<NineClass> labels = join_labels(m.row_names, read_flairs(labels_path));
  std::vector<int> numeric;
  numeric.reserve(labels.size());
  for (const NineClass c : labels)
    numeric.push_back(axis == "econ" ? axis_value(to_economic(c))
                                     : axis_value(to_social(c)));
  write_correlations(out_path, m.col_names, term_label_correlation(m.m, numeric));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ideolab: ideology-prediction experiments on interaction and text data"};
  app.require_subcommand(1);

  const std::vector<std::string> task_names = {"econ_binary", "social_binary", "econ_3",
                                               "social_3", "nine_class"};
  const std::vector<std::string> kind_names = {
      "zeror",   "logistic", "multinomial", "ovr_logistic", "svc",
      "ovr_svc", "tree",     "forest",      "ovr_forest",   "adaboost"};

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a planted-signal corpus");
  std::string synth_config, synth_out;
  synth->add_option("--config", synth_config, "JSON config overriding the defaults")
      ->check(CLI::ExistingFile);
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->callback([&] { cmd_synth(synth_config, synth_out); });

  // ingest
  auto* ingest = app.add_subcommand("ingest", "History CSV to interaction matrix");
  std::string ingest_history, ingest_flairs, ingest_out;
  double ingest_min_user = 50.0, ingest_min_sub = 50.0;
  bool ingest_binarize = false;
  std::size_t ingest_chunk = 100000;
  ingest->add_option("--history", ingest_history, "Interaction history CSV")->required();
  ingest->add_option("--flairs", ingest_flairs, "User flair CSV")->required();
  ingest->add_option("--out", ingest_out, "Output directory")->required();
  ingest->add_option("--min-user", ingest_min_user, "Minimum interactions per user");
  ingest->add_option("--min-sub", ingest_min_sub, "Minimum interactions per subreddit");
  ingest->add_flag("--binarize", ingest_binarize, "Write 1.0 for every kept cell");
  ingest->add_option("--chunk-size", ingest_chunk, "Pivot accumulation chunk")
      ->check(CLI::PositiveNumber);
  ingest->callback([&] {
    cmd_ingest(ingest_history, ingest_flairs, ingest_out, ingest_min_user,
               ingest_min_sub, ingest_binarize, ingest_chunk);
  });

  // featurize
  auto* featurize = app.add_subcommand("featurize", "Text features from comments");
  std::string feat_comments, feat_mode = "tfidf", feat_embeddings, feat_out;
  std::size_t feat_max_features = 20000;
  double feat_min_df = 2.0, feat_max_df = 0.95;
  featurize->add_option("--comments", feat_comments, "Comments JSONL")->required();
  featurize->add_option("--mode", feat_mode, "tfidf | w2v | both")
      ->check(CLI::IsMember({"tfidf", "w2v", "both"}));
  featurize->add_option("--max-features", feat_max_features, "Vocabulary cap");
  featurize->add_option("--min-df", feat_min_df, "Minimum document frequency");
  featurize->add_option("--max-df", feat_max_df, "Maximum document frequency");
  featurize->add_option("--embeddings", feat_embeddings, "Pretrained token vectors");
  featurize->add_option("--out", feat_out, "Output directory")->required();
  featurize->callback([&] {
    cmd_featurize(feat_comments, feat_mode, feat_max_features, feat_min_df, feat_max_df,
                  feat_embeddings, feat_out);
  });

  // svd
  auto* svd_cmd = app.add_subcommand("svd", "Truncated SVD of a sparse matrix");
  std::string svd_matrix, svd_out;
  std::size_t svd_q = 500;
  std::uint64_t svd_seed = 42;
  svd_cmd->add_option("--matrix", svd_matrix, "Sparse matrix file")->required();
  svd_cmd->add_option("--q", svd_q, "Components")->check(CLI::PositiveNumber);
  svd_cmd->add_option("--seed", svd_seed, "Seed");
  svd_cmd->add_option("--out", svd_out, "Output factor file")->required();
  svd_cmd->callback([&] { cmd_svd(svd_matrix, svd_q, svd_seed, svd_out); });

  // train
  auto* train = app.add_subcommand("train", "Fit one model on every labelled row");
  std::string train_features, train_labels, train_task = "econ_binary";
  std::string train_model, train_weighting = "uniform";
  ModelSpec train_spec;
  std::uint64_t train_seed = 42;
  std::size_t train_threads = 1;
  std::string train_out;
  train->add_option("--features", train_features, "Feature file (matrix or features JSON)")
      ->required();
  train->add_option("--labels", train_labels, "User flair CSV")->required();
  train->add_option("--task", train_task, "Classification task")
      ->check(CLI::IsMember(task_names));
  train->add_option("--model", train_model, "Model kind")
      ->check(CLI::IsMember(kind_names))
      ->required();
  train->add_option("--lambda", train_spec.lambda, "L1 strength (logistic family)");
  train->add_option("--c", train_spec.c, "Margin cost (svc family)");
  train->add_option("--eta", train_spec.eta, "Learning rate (adaboost)");
  train->add_option("--rounds", train_spec.rounds, "Boosting rounds");
  train->add_option("--trees", train_spec.n_trees, "Forest size");
  train->add_option("--weighting", train_weighting, "uniform | balanced")
      ->check(CLI::IsMember({"uniform", "balanced"}));
  train->add_option("--seed", train_seed, "Seed");
  train->add_option("--threads", train_threads, "Parallelism cap")
      ->check(CLI::PositiveNumber);
  train->add_option("--out", train_out, "Model file")->required();
  train->callback([&] {
    train_spec.kind = parse_model_kind(train_model);
    train_spec.weighting = parse_weighting(train_weighting);
    cmd_train(train_features, train_labels, train_task, train_spec, train_seed,
              train_threads, train_out);
  });

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a saved model");
  std::string eval_model, eval_features, eval_labels, eval_out;
  eval->add_option("--model", eval_model, "Model file")->required();
  eval->add_option("--features", eval_features, "Feature file")->required();
  eval->add_option("--labels", eval_labels, "User flair CSV")->required();
  eval->add_option("--out", eval_out, "Report file")->required();
  eval->callback([&] { cmd_eval(eval_model, eval_features, eval_labels, eval_out); });

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Full split/select/refit protocol");
  std::string exp_config, exp_out_dir;
  std::optional<std::uint64_t> exp_seed;
  std::optional<std::size_t> exp_threads;
  experiment->add_option("--config", exp_config, "Experiment JSON config")->required();
  experiment->add_option("--out-dir", exp_out_dir, "Override the config out_dir");
  experiment->add_option("--seed", exp_seed, "Override the config seed");
  experiment->add_option("--threads", exp_threads, "Override the config thread cap")
      ->check(CLI::PositiveNumber);
  experiment->callback(
      [&] { cmd_experiment(exp_config, exp_out_dir, exp_seed, exp_threads); });

  // sample-study
  auto* study = app.add_subcommand("sample-study",
                                   "Accuracy under per-user subreddit subsampling");
  std::string study_matrix, study_labels, study_task = "econ_binary";
  std::string study_weighting = "uniform", study_out;
  SamplingStudySpec study_spec;
  study->add_option("--matrix", study_matrix, "Sparse interaction matrix")->required();
  study->add_option("--labels", study_labels, "User flair CSV")->required();
  study->add_option("--task", study_task, "Binary task")
      ->check(CLI::IsMember({"econ_binary", "social_binary"}));
  study->add_option("--sizes", study_spec.sizes, "Subreddits kept per user")
      ->delimiter(',');
  study->add_option("--min-unique", study_spec.min_unique,
                    "Minimum distinct subreddits per retained user");
  study->add_option("--lambda", study_spec.lambda, "L1 strength");
  study->add_option("--weighting", study_weighting, "uniform | balanced")
      ->check(CLI::IsMember({"uniform", "balanced"}));
  study->add_option("--seed", study_spec.seed, "Seed");
  study->add_option("--out", study_out, "Report file")->required();
  study->callback([&] {
    study_spec.task = parse_task(study_task);
    study_spec.weighting = parse_weighting(study_weighting);
    cmd_sample_study(study_matrix, study_labels, study_spec, study_out);
  });

  // boruta
  auto* boruta = app.add_subcommand("boruta", "Shadow-feature selection");
  std::string boruta_matrix, boruta_labels, boruta_task = "econ_binary";
  std::string boruta_out, boruta_report;
  std::size_t boruta_trees = 100;
  std::uint64_t boruta_seed = 42;
  boruta->add_option("--matrix", boruta_matrix, "Sparse feature matrix")->required();
  boruta->add_option("--labels", boruta_labels, "User flair CSV")->required();
  boruta->add_option("--task", boruta_task, "Classification task")
      ->check(CLI::IsMember(task_names));
  boruta->add_option("--trees", boruta_trees, "Forest size")->check(CLI::PositiveNumber);
  boruta->add_option("--seed", boruta_seed, "Seed");
  boruta->add_option("--out", boruta_out, "Selected feature list")->required();
  boruta->add_option("--report", boruta_report, "Optional importance report JSON");
  boruta->callback([&] {
    cmd_boruta(boruta_matrix, boruta_labels, boruta_task, boruta_trees, boruta_seed,
               boruta_out, boruta_report);
  });

  // correlate
  auto* correlate = app.add_subcommand("correlate", "Term-ideology correlations");
  std::string corr_matrix, corr_labels, corr_axis = "econ", corr_out;
  correlate->add_option("--matrix", corr_matrix, "Sparse term matrix")->required();
  correlate->add_option("--labels", corr_labels, "User flair CSV")->required();
  correlate->add_option("--axis", corr_axis, "econ | social")
      ->check(CLI::IsMember({"econ", "social"}));
  correlate->add_option("--out", corr_out, "Correlation CSV")->required();
  correlate->callback([&] { cmd_correlate(corr_matrix, corr_labels, corr_axis, corr_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
