#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "ideolab/csr.hpp"
#include "ideolab/csv.hpp"
#include "ideolab/errors.hpp"
#include "ideolab/hexf.hpp"
#include "ideolab/io.hpp"
#include "ideolab/labels.hpp"
#include "ideolab/model_json.hpp"
#include "ideolab/rng.hpp"

using namespace ideolab;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ideolab_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

CsrMatrix small_matrix() {
  std::vector<Triplet> t = {{0, 1, 0.5}, {0, 3, -2.0}, {2, 0, 1.25}, {2, 3, 4.0}};
  return csr_from_triplets(3, 4, t);
}

}  // namespace

TEST_CASE("fmt_double round-trips through parsing") {
  for (const double v : {0.1, -1.0 / 3.0, 1e-300, 12345.6789, 0.0, -2.5e17}) {
    const std::string s = fmt_double(v);
    double back = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), back);
    REQUIRE(r.ec == std::errc{});
    CHECK(back == v);
  }
  CHECK(fmt_double(0.1) == "0.1");
  CHECK(fmt_double(1.0) == "1");
}

TEST_CASE("hex f64 is a bit-exact round trip") {
  Rng rng(801);
  for (int i = 0; i < 50; ++i) {
    const double v = rng.normal() * std::pow(10.0, static_cast<double>(i % 40) - 20.0);
    CHECK(unhex_f64(hex_f64(v)) == v);
  }
  CHECK(hex_f64(1.0) == "3ff0000000000000");
  CHECK(unhex_f64("3FF0000000000000") == 1.0);
  const double neg_zero = unhex_f64(hex_f64(-0.0));
  CHECK(std::signbit(neg_zero));
  CHECK(std::isinf(unhex_f64(hex_f64(std::numeric_limits<double>::infinity()))));
  CHECK_THROWS_AS(unhex_f64("123"), IoError);
  CHECK_THROWS_AS(unhex_f64("3ff000000000000g"), IoError);
}

TEST_CASE("csv record splitting handles quotes and escapes") {
  CHECK(split_csv_record("a,b,c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_csv_record("a,,c") == std::vector<std::string>{"a", "", "c"});
  CHECK(split_csv_record("\"a,b\",c") == std::vector<std::string>{"a,b", "c"});
  CHECK(split_csv_record("\"he said \"\"hi\"\"\",x") ==
        std::vector<std::string>{"he said \"hi\"", "x"});
  CHECK(split_csv_record("") == std::vector<std::string>{""});
  for (const std::string field : {"plain", "with,comma", "with\"quote", "with\nnewline"}) {
    const auto round = split_csv_record(csv_escape(field));
    REQUIRE(round.size() == 1);
    CHECK(round[0] == field);
  }
}

TEST_CASE("matrix container round trip") {
  NamedMatrix nm;
  nm.m = small_matrix();
  nm.row_names = {"alice", "bob", "carol"};
  nm.col_names = {"s0", "s1", "s2", "s3"};
  const auto path = scratch("m.txt").string();
  write_matrix(path, nm);
  const NamedMatrix back = read_matrix(path);
  CHECK(back.m.rows == 3);
  CHECK(back.m.cols == 4);
  CHECK(back.m.row_ptr == nm.m.row_ptr);
  CHECK(back.m.col_idx == nm.m.col_idx);
  CHECK(back.m.values == nm.m.values);
  CHECK(back.row_names == nm.row_names);
  CHECK(back.col_names == nm.col_names);
  CHECK(back.row_kind == "users");
  CHECK(back.col_kind == "subreddits");
  const std::string text = read_text_file(path);
  CHECK(text.rfind("%%csr 3 4 4\n", 0) == 0);
}

TEST_CASE("matrix container preserves exact values") {
  NamedMatrix nm;
  std::vector<Triplet> t = {{0, 0, 1.0 / 3.0}, {1, 1, -0.1}};
  nm.m = csr_from_triplets(2, 2, t);
  nm.row_names = {"u with space", "v"};
  nm.col_names = {"a", "b"};
  const auto path = scratch("m2.txt").string();
  write_matrix(path, nm);
  const NamedMatrix back = read_matrix(path);
  CHECK(back.m.values[0] == 1.0 / 3.0);
  CHECK(back.m.values[1] == -0.1);
  CHECK(back.row_names[0] == "u with space");
}

TEST_CASE("feature container round trip is bit exact") {
  Rng rng(802);
  NamedFeatures f;
  f.block.x = DenseMatrix(3, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) f.block.x.at(i, j) = rng.normal();
  f.block.provenance = Provenance::tfidf;
  f.row_names = {"a", "b", "c"};
  f.col_names = {"t1", "t2"};
  const auto path = scratch("f.json").string();
  write_features(path, f);
  const NamedFeatures back = read_features(path);
  CHECK(back.block.x.rows == 3);
  CHECK(back.block.x.cols == 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(back.block.x.at(i, j) == f.block.x.at(i, j));
  CHECK(back.block.provenance == Provenance::tfidf);
  CHECK(back.row_names == f.row_names);
  CHECK(back.col_names == f.col_names);
}

TEST_CASE("svd container round trip and score view") {
  Rng rng(803);
  SvdFile f;
  f.factors.q = 2;
  f.factors.sigma = {3.0, 1.5};
  f.factors.u = DenseMatrix(4, 2);
  f.factors.v = DenseMatrix(3, 2);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 2; ++j) f.factors.u.at(i, j) = rng.normal();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) f.factors.v.at(i, j) = rng.normal();
  f.row_names = {"a", "b", "c", "d"};
  const auto path = scratch("svd.json").string();
  write_svd(path, f);

  const SvdFile back = read_svd(path);
  CHECK(back.factors.q == 2);
  CHECK(back.factors.sigma == f.factors.sigma);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(back.factors.u.at(i, j) == f.factors.u.at(i, j));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(back.factors.v.at(i, j) == f.factors.v.at(i, j));
  CHECK(back.row_names == f.row_names);

  // The same file doubles as a feature container holding U*diag(sigma).
  const NamedFeatures scores = read_features(path);
  CHECK(scores.block.provenance == Provenance::svd_scores);
  CHECK(scores.row_names == f.row_names);
  REQUIRE(scores.block.x.cols == 2);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(scores.block.x.at(i, j) == f.factors.u.at(i, j) * f.factors.sigma[j]);
}

TEST_CASE("flair csv recodes raw flairs and passes class names through") {
  const auto path = scratch("flairs.csv").string();
  write_text_file(path,
                  "username,ideology\n"
                  "a,libleft\n"
                  "b,\":authright: - AuthRight\"\n"  // raw flair
                  "c, centrist \n"                   // whitespace tolerated
                  "d,\"left\"\n");
  const FlairFile f = read_flairs(path);
  REQUIRE(f.usernames == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(f.labels[0] == NineClass::libleft);
  CHECK(f.labels[1] == NineClass::authright);
  CHECK(f.labels[2] == NineClass::centrist);
  CHECK(f.labels[3] == NineClass::left);
}

TEST_CASE("flair csv rejects malformed input") {
  const auto path = scratch("bad.csv").string();
  write_text_file(path, "user,flair\na,left\n");
  CHECK_THROWS_AS(read_flairs(path), MalformedRow);
  write_text_file(path, "username,ideology\na,left\na,right\n");
  CHECK_THROWS_AS(read_flairs(path), MalformedRow);  // duplicate username
  write_text_file(path, "username,ideology\na\n");
  CHECK_THROWS_AS(read_flairs(path), MalformedRow);
  write_text_file(path, "username,ideology\na,NotAFlair\n");
  CHECK_THROWS_AS(read_flairs(path), UnknownFlair);
  CHECK_THROWS_AS(read_flairs(scratch("missing.csv").string()), IoError);
}

TEST_CASE("flair write and read round trip") {
  const auto path = scratch("roundtrip.csv").string();
  write_flairs(path, {"x,y", "z"}, {"libleft", "right"});
  const FlairFile f = read_flairs(path);
  CHECK(f.usernames == std::vector<std::string>{"x,y", "z"});
  CHECK(f.labels == std::vector<NineClass>{NineClass::libleft, NineClass::right});
}

TEST_CASE("join_labels matches rows by username") {
  FlairFile f;
  f.usernames = {"a", "b", "c"};
  f.labels = {NineClass::left, NineClass::right, NineClass::centrist};
  const auto joined = join_labels({"c", "a"}, f);
  CHECK(joined == std::vector<NineClass>{NineClass::centrist, NineClass::left});
  CHECK_THROWS_AS(join_labels({"nope"}, f), UnknownLabel);
}

TEST_CASE("comments jsonl round trip") {
  CommentsFile c;
  c.usernames = {"a", "b"};
  c.comments = {{"first comment", "second \"quoted\""}, {}};
  const auto path = scratch("comments.jsonl").string();
  write_comments(path, c);
  const CommentsFile back = read_comments(path);
  CHECK(back.usernames == c.usernames);
  CHECK(back.comments == c.comments);
  write_text_file(path, "{\"username\": \"a\"}\n");
  CHECK_THROWS_AS(read_comments(path), MalformedRow);
  write_text_file(path, "not json\n");
  CHECK_THROWS_AS(read_comments(path), MalformedRow);
}

TEST_CASE("correlation table sorts by magnitude then term") {
  const auto path = scratch("corr.csv").string();
  write_correlations(path, {"bb", "aa", "cc", "dd"}, {0.5, -0.9, 0.5, 0.0});
  CHECK(read_text_file(path) ==
        "term,r\n"
        "aa,-0.9\n"
        "bb,0.5\n"
        "cc,0.5\n"
        "dd,0\n");
}

TEST_CASE("report json is deterministic and complete") {
  EvalReport r;
  r.class_names = {"left", "right"};
  r.accuracy = 0.75;
  r.auc = 0.875;
  r.per_class_auc = std::vector<double>{0.875, 0.875};
  r.prevalence = {0.5, 0.5};
  r.confusion = {{3, 1}, {1, 3}};
  r.n_train = 10;
  r.n_val = 4;
  r.n_test = 8;
  const std::string a = report_json_text(r);
  const std::string b = report_json_text(r);
  CHECK(a == b);
  CHECK(a.find("\"accuracy\": 0.75") != std::string::npos);
  CHECK(a.find("\"left\": 0.875") != std::string::npos);
  CHECK(a.find("\"n_test\": 8") != std::string::npos);
  r.auc.reset();
  r.per_class_auc.reset();
  const std::string c = report_json_text(r);
  CHECK(c.find("\"auc\": null") != std::string::npos);
}

TEST_CASE("model json round-trips each kind bit exactly") {
  Rng rng(804);
  DenseMatrix x(24, 3);
  std::vector<int> y(24);
  for (std::size_t i = 0; i < 24; ++i) {
    y[i] = static_cast<int>(i % 3);
    x.at(i, 0) = 2.0 * (i % 3) + rng.normal();
    x.at(i, 1) = rng.normal();
    x.at(i, 2) = rng.normal();
  }
  const std::vector<std::string> names = {"authleft", "left", "libleft"};

  std::vector<SavedModel> models;
  models.push_back({zeror_fit(y, 3), names});
  {
    LogisticConfig cfg;
    models.push_back({logistic_fit(x, one_vs_rest_labels(y, 0), cfg), names});
    models.push_back({ovr_logistic_fit(x, y, 3, cfg), names});
  }
  models.push_back({multinomial_fit(x, y, 3), names});
  {
    SvcConfig cfg;
    std::vector<int> pm1(24);
    for (std::size_t i = 0; i < 24; ++i) pm1[i] = y[i] == 1 ? 1 : -1;
    models.push_back({linear_svc_fit(x, pm1, cfg), names});
    models.push_back({ovr_svc_fit(x, y, 3, cfg), names});
  }
  models.push_back({tree_fit(x, y, 3, Weighting::uniform, TreeConfig{}), names});
  {
    ForestConfig cfg;
    cfg.n_trees = 8;
    cfg.seed = 5;
    models.push_back({forest_fit(x, y, 3, cfg), names});
    models.push_back({ovr_forest_fit(x, y, 3, cfg), names});
  }
  {
    AdaBoostConfig cfg;
    cfg.rounds = 6;
    models.push_back({adaboost_fit(x, y, 3, cfg), names});
  }

  for (const SavedModel& m : models) {
    const std::string text = model_to_json_text(m);
    const SavedModel back = model_from_json_text(text);
    CHECK(std::string(model_kind(back.model)) == model_kind(m.model));
    CHECK(back.class_names == names);
    // Bit-exact payload: identical predictions and identical re-serialization.
    CHECK(model_to_json_text(back) == text);
    CHECK(predict_any(back.model, x) == predict_any(m.model, x));
    const auto s0 = scores_any(m.model, x);
    const auto s1 = scores_any(back.model, x);
    REQUIRE(s0.has_value() == s1.has_value());
    if (s0)
      for (std::size_t i = 0; i < s0->rows; ++i)
        for (std::size_t j = 0; j < s0->cols; ++j)
          CHECK(s0->at(i, j) == s1->at(i, j));
    const auto path = scratch("model.json").string();
    save_model(path, m);
    CHECK(model_to_json_text(load_model(path)) == text);
  }
}

TEST_CASE("model json rejects corrupt payloads") {
  CHECK_THROWS_AS(model_from_json_text("not json"), IoError);
  CHECK_THROWS_AS(model_from_json_text("{\"kind\": \"martian\"}"), IoError);
  CHECK_THROWS_AS(load_model(scratch("absent.json").string()), IoError);
}
