#include "ideolab/model_json.hpp"

#include <fstream>

#include <json.hpp>

#include "ideolab/errors.hpp"
#include "ideolab/hexf.hpp"

namespace ideolab {

namespace {

using nlohmann::ordered_json;

ordered_json hex_array(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (const double x : v) a.push_back(hex_f64(x));
  return a;
}

std::vector<double> unhex_array(const ordered_json& a) {
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& s : a) out.push_back(unhex_f64(s.get<std::string>()));
  return out;
}

ordered_json dense_json(const DenseMatrix& m) {
  return ordered_json{{"rows", m.rows}, {"cols", m.cols}, {"data", hex_array(m.data)}};
}

DenseMatrix dense_from(const ordered_json& j) {
  DenseMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  m.data = unhex_array(j.at("data"));
  if (m.data.size() != m.rows * m.cols)
    throw IoError("model json: dense payload size mismatch");
  return m;
}

const char* weighting_str(Weighting w) { return name(w); }

ordered_json to_json(const ZeroRModel& m) {
  return ordered_json{{"majority", m.majority}, {"counts", m.counts}};
}

ZeroRModel zeror_from(const ordered_json& j) {
  ZeroRModel m;
  m.majority = j.at("majority").get<int>();
  m.counts = j.at("counts").get<std::vector<std::size_t>>();
  return m;
}

ordered_json to_json(const LogisticModel& m) {
  return ordered_json{{"lambda", m.lambda},
                      {"weighting", weighting_str(m.weighting)},
                      {"separable_warning", m.separable_warning},
                      {"iterations", m.iterations},
                      {"beta", hex_array(m.beta)}};
}

LogisticModel logistic_from(const ordered_json& j) {
  LogisticModel m;
  m.lambda = j.at("lambda").get<double>();
  m.weighting = parse_weighting(j.at("weighting").get<std::string>());
  m.separable_warning = j.at("separable_warning").get<bool>();
  m.iterations = j.at("iterations").get<std::size_t>();
  m.beta = unhex_array(j.at("beta"));
  return m;
}

ordered_json to_json(const MultinomialModel& m) {
  return ordered_json{{"n_classes", m.n_classes},
                      {"lambda", m.lambda},
                      {"weighting", weighting_str(m.weighting)},
                      {"separable_warning", m.separable_warning},
                      {"iterations", m.iterations},
                      {"theta", dense_json(m.theta)}};
}

MultinomialModel multinomial_from(const ordered_json& j) {
  MultinomialModel m;
  m.n_classes = j.at("n_classes").get<std::size_t>();
  m.lambda = j.at("lambda").get<double>();
  m.weighting = parse_weighting(j.at("weighting").get<std::string>());
  m.separable_warning = j.at("separable_warning").get<bool>();
  m.iterations = j.at("iterations").get<std::size_t>();
  m.theta = dense_from(j.at("theta"));
  return m;
}

ordered_json to_json(const LinearSvcModel& m) {
  return ordered_json{{"c", m.c},
                      {"iterations", m.iterations},
                      {"beta0", hex_f64(m.beta0)},
                      {"beta", hex_array(m.beta)}};
}

LinearSvcModel svc_from(const ordered_json& j) {
  LinearSvcModel m;
  m.c = j.at("c").get<double>();
  m.iterations = j.at("iterations").get<std::size_t>();
  m.beta0 = unhex_f64(j.at("beta0").get<std::string>());
  m.beta = unhex_array(j.at("beta"));
  return m;
}

ordered_json to_json(const TreeModel& m) {
  ordered_json nodes = ordered_json::array();
  for (const auto& n : m.nodes)
    nodes.push_back(ordered_json{{"feature", n.feature},
                                 {"threshold", hex_f64(n.threshold)},
                                 {"left", n.left},
                                 {"right", n.right},
                                 {"class_weight", hex_array(n.class_weight)}});
  return ordered_json{{"n_classes", m.n_classes},
                      {"n_features", m.n_features},
                      {"min_bucket", m.min_bucket},
                      {"min_samples", m.min_samples},
                      {"importance", hex_array(m.importance)},
                      {"nodes", nodes}};
}

TreeModel tree_from(const ordered_json& j) {
  TreeModel m;
  m.n_classes = j.at("n_classes").get<std::size_t>();
  m.n_features = j.at("n_features").get<std::size_t>();
  m.min_bucket = j.at("min_bucket").get<std::size_t>();
  m.min_samples = j.at("min_samples").get<std::size_t>();
  m.importance = unhex_array(j.at("importance"));
  for (const auto& nj : j.at("nodes")) {
    TreeModel::Node n;
    n.feature = nj.at("feature").get<int>();
    n.threshold = unhex_f64(nj.at("threshold").get<std::string>());
    n.left = nj.at("left").get<std::int32_t>();
    n.right = nj.at("right").get<std::int32_t>();
    n.class_weight = unhex_array(nj.at("class_weight"));
    m.nodes.push_back(std::move(n));
  }
  return m;
}

ordered_json to_json(const ForestModel& m) {
  ordered_json trees = ordered_json::array();
  for (const auto& t : m.trees) trees.push_back(to_json(t));
  return ordered_json{{"n_classes", m.n_classes},
                      {"n_features", m.n_features},
                      {"m_try", m.m_try},
                      {"seed", m.seed},
                      {"importance", hex_array(m.importance)},
                      {"trees", trees}};
}

ForestModel forest_from(const ordered_json& j) {
  ForestModel m;
  m.n_classes = j.at("n_classes").get<std::size_t>();
  m.n_features = j.at("n_features").get<std::size_t>();
  m.m_try = j.at("m_try").get<std::size_t>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.importance = unhex_array(j.at("importance"));
  for (const auto& tj : j.at("trees")) m.trees.push_back(tree_from(tj));
  return m;
}

ordered_json to_json(const AdaBoostModel& m) {
  ordered_json stumps = ordered_json::array();
  for (const auto& s : m.stumps) stumps.push_back(to_json(s));
  return ordered_json{{"n_classes", m.n_classes},
                      {"n_features", m.n_features},
                      {"eta", m.eta},
                      {"rounds_requested", m.rounds_requested},
                      {"alphas", hex_array(m.alphas)},
                      {"stumps", stumps}};
}

AdaBoostModel adaboost_from(const ordered_json& j) {
  AdaBoostModel m;
  m.n_classes = j.at("n_classes").get<std::size_t>();
  m.n_features = j.at("n_features").get<std::size_t>();
  m.eta = j.at("eta").get<double>();
  m.rounds_requested = j.at("rounds_requested").get<std::size_t>();
  m.alphas = unhex_array(j.at("alphas"));
  for (const auto& sj : j.at("stumps")) m.stumps.push_back(tree_from(sj));
  return m;
}

template <typename Sub>
ordered_json ovr_json(const OvrModel<Sub>& m) {
  ordered_json subs = ordered_json::array();
  for (const auto& s : m.submodels) subs.push_back(to_json(s));
  return ordered_json{{"n_classes", m.n_classes}, {"submodels", subs}};
}

template <typename Sub, typename FromFn>
OvrModel<Sub> ovr_from(const ordered_json& j, FromFn&& from) {
  OvrModel<Sub> m;
  m.n_classes = j.at("n_classes").get<std::size_t>();
  for (const auto& sj : j.at("submodels")) m.submodels.push_back(from(sj));
  return m;
}

}  // namespace

const char* model_kind(const AnyModel& m) {
  struct Visitor {
    const char* operator()(const ZeroRModel&) const { return "zeror"; }
    const char* operator()(const LogisticModel&) const { return "logistic"; }
    const char* operator()(const MultinomialModel&) const { return "multinomial"; }
    const char* operator()(const LinearSvcModel&) const { return "svc"; }
    const char* operator()(const TreeModel&) const { return "tree"; }
    const char* operator()(const ForestModel&) const { return "forest"; }
    const char* operator()(const AdaBoostModel&) const { return "adaboost"; }
    const char* operator()(const OvrLogisticModel&) const { return "ovr_logistic"; }
    const char* operator()(const OvrForestModel&) const { return "ovr_forest"; }
    const char* operator()(const OvrSvcModel&) const { return "ovr_svc"; }
  };
  return std::visit(Visitor{}, m);
}

std::size_t model_feature_count(const AnyModel& m) {
  struct Visitor {
    std::size_t operator()(const ZeroRModel&) const { return 0; }
    std::size_t operator()(const LogisticModel& v) const {
      return v.beta.empty() ? 0 : v.beta.size() - 1;
    }
    std::size_t operator()(const MultinomialModel& v) const {
      return v.theta.cols == 0 ? 0 : v.theta.cols - 1;
    }
    std::size_t operator()(const LinearSvcModel& v) const { return v.beta.size(); }
    std::size_t operator()(const TreeModel& v) const { return v.n_features; }
    std::size_t operator()(const ForestModel& v) const { return v.n_features; }
    std::size_t operator()(const AdaBoostModel& v) const { return v.n_features; }
    std::size_t operator()(const OvrLogisticModel& v) const {
      return v.submodels.empty() || v.submodels[0].beta.empty()
                 ? 0
                 : v.submodels[0].beta.size() - 1;
    }
    std::size_t operator()(const OvrForestModel& v) const {
      return v.submodels.empty() ? 0 : v.submodels[0].n_features;
    }
    std::size_t operator()(const OvrSvcModel& v) const {
      return v.submodels.empty() ? 0 : v.submodels[0].beta.size();
    }
  };
  return std::visit(Visitor{}, m);
}

std::vector<int> predict_any(const AnyModel& m, const DenseMatrix& x) {
  struct Visitor {
    const DenseMatrix& x;
    std::vector<int> operator()(const ZeroRModel& v) const {
      return zeror_predict(v, x.rows);
    }
    std::vector<int> operator()(const LogisticModel& v) const {
      return logistic_predict(v, x);
    }
    std::vector<int> operator()(const MultinomialModel& v) const {
      return multinomial_predict(v, x);
    }
    std::vector<int> operator()(const LinearSvcModel& v) const {
      auto pm = linear_svc_predict(v, x);
      for (int& c : pm) c = c > 0 ? 1 : 0;
      return pm;
    }
    std::vector<int> operator()(const TreeModel& v) const { return tree_predict(v, x); }
    std::vector<int> operator()(const ForestModel& v) const {
      return forest_predict(v, x);
    }
    std::vector<int> operator()(const AdaBoostModel& v) const {
      return adaboost_predict(v, x);
    }
    std::vector<int> operator()(const OvrLogisticModel& v) const {
      return ovr_argmax(ovr_logistic_scores(v, x));
    }
    std::vector<int> operator()(const OvrForestModel& v) const {
      return ovr_argmax(ovr_forest_scores(v, x));
    }
    std::vector<int> operator()(const OvrSvcModel& v) const {
      return ovr_argmax(ovr_svc_scores(v, x));
    }
  };
  return std::visit(Visitor{x}, m);
}

std::optional<DenseMatrix> scores_any(const AnyModel& m, const DenseMatrix& x) {
  struct Visitor {
    const DenseMatrix& x;
    std::optional<DenseMatrix> operator()(const ZeroRModel&) const { return std::nullopt; }
    std::optional<DenseMatrix> operator()(const LogisticModel& v) const {
      const auto p = logistic_predict_proba(v, x);
      DenseMatrix s(x.rows, 2);
      for (std::size_t i = 0; i < x.rows; ++i) {
        s.at(i, 0) = 1.0 - p[i];
        s.at(i, 1) = p[i];
      }
      return s;
    }
    std::optional<DenseMatrix> operator()(const MultinomialModel& v) const {
      return multinomial_predict_proba(v, x);
    }
    std::optional<DenseMatrix> operator()(const LinearSvcModel& v) const {
      const auto d = linear_svc_decision(v, x);
      DenseMatrix s(x.rows, 2);
      for (std::size_t i = 0; i < x.rows; ++i) {
        s.at(i, 0) = -d[i];
        s.at(i, 1) = d[i];
      }
      return s;
    }
    std::optional<DenseMatrix> operator()(const TreeModel& v) const {
      return tree_predict_proba(v, x);
    }
    std::optional<DenseMatrix> operator()(const ForestModel& v) const {
      return forest_predict_proba(v, x);
    }
    std::optional<DenseMatrix> operator()(const AdaBoostModel& v) const {
      return adaboost_scores(v, x);
    }
    std::optional<DenseMatrix> operator()(const OvrLogisticModel& v) const {
      return ovr_logistic_scores(v, x);
    }
    std::optional<DenseMatrix> operator()(const OvrForestModel& v) const {
      return ovr_forest_scores(v, x);
    }
    std::optional<DenseMatrix> operator()(const OvrSvcModel& v) const {
      return ovr_svc_scores(v, x);
    }
  };
  return std::visit(Visitor{x}, m);
}

std::string model_to_json_text(const SavedModel& m) {
  struct Visitor {
    ordered_json operator()(const ZeroRModel& v) const { return to_json(v); }
    ordered_json operator()(const LogisticModel& v) const { return to_json(v); }
    ordered_json operator()(const MultinomialModel& v) const { return to_json(v); }
    ordered_json operator()(const LinearSvcModel& v) const { return to_json(v); }
    ordered_json operator()(const TreeModel& v) const { return to_json(v); }
    ordered_json operator()(const ForestModel& v) const { return to_json(v); }
    ordered_json operator()(const AdaBoostModel& v) const { return to_json(v); }
    ordered_json operator()(const OvrLogisticModel& v) const { return ovr_json(v); }
    ordered_json operator()(const OvrForestModel& v) const { return ovr_json(v); }
    ordered_json operator()(const OvrSvcModel& v) const { return ovr_json(v); }
  };
  ordered_json j{{"kind", model_kind(m.model)},
                 {"class_names", m.class_names},
                 {"model", std::visit(Visitor{}, m.model)}};
  return j.dump(2) + "\n";
}

SavedModel model_from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("model json: parse failure: ") + e.what());
  }
  try {
    SavedModel m;
    m.class_names = j.at("class_names").get<std::vector<std::string>>();
    const std::string kind = j.at("kind").get<std::string>();
    const ordered_json& body = j.at("model");
    if (kind == "zeror") m.model = zeror_from(body);
    else if (kind == "logistic") m.model = logistic_from(body);
    else if (kind == "multinomial") m.model = multinomial_from(body);
    else if (kind == "svc") m.model = svc_from(body);
    else if (kind == "tree") m.model = tree_from(body);
    else if (kind == "forest") m.model = forest_from(body);
    else if (kind == "adaboost") m.model = adaboost_from(body);
    else if (kind == "ovr_logistic")
      m.model = ovr_from<LogisticModel>(body, logistic_from);
    else if (kind == "ovr_forest")
      m.model = ovr_from<ForestModel>(body, forest_from);
    else if (kind == "ovr_svc")
      m.model = ovr_from<LinearSvcModel>(body, svc_from);
    else
      throw IoError("model json: unknown kind \"" + kind + "\"");
    return m;
  } catch (const ordered_json::exception& e) {
    throw IoError(std::string("model json: bad structure: ") + e.what());
  }
}

void save_model(const std::string& path, const SavedModel& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << model_to_json_text(m);
  if (!out) throw IoError("write failure: " + path);
}

SavedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return model_from_json_text(text);
}

}  // namespace ideolab
