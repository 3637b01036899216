#include "ideolab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "ideolab/csv.hpp"
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

double parse_double(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw MalformedRow(line_no, "expected a number, got \"" + std::string(s) + "\"");
  return v;
}

std::size_t parse_size(std::string_view s, std::size_t line_no) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw MalformedRow(line_no, "expected a count, got \"" + std::string(s) + "\"");
  return v;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

ordered_json parse_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  try {
    return ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw IoError(path + ": parse failure: " + e.what());
  }
}

void dump_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_matrix(const std::string& path, const NamedMatrix& m) {
  if (m.row_names.size() != m.m.rows || m.col_names.size() != m.m.cols)
    throw LengthMismatch("write_matrix: name count != shape");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "%%csr " << m.m.rows << " " << m.m.cols << " " << m.m.values.size() << "\n";
  for (std::size_t i = 0; i < m.m.rows; ++i)
    for (std::size_t idx = m.m.row_ptr[i]; idx < m.m.row_ptr[i + 1]; ++idx)
      out << i << " " << m.m.col_idx[idx] << " " << fmt_double(m.m.values[idx]) << "\n";
  out << "#" << m.row_kind << "\n";
  for (const auto& s : m.row_names) out << s << "\n";
  out << "#" << m.col_kind << "\n";
  for (const auto& s : m.col_names) out << s << "\n";
  if (!out) throw IoError("write failure: " + path);
}

NamedMatrix read_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::string line;
  std::size_t line_no = 0;
  if (!getline_any(in, line)) throw IoError(path + ": empty file");
  ++line_no;
  const auto header = split_ws(line);
  if (header.size() != 4 || header[0] != "%%csr")
    throw MalformedRow(line_no, "expected \"%%csr rows cols nnz\" header");
  const std::size_t rows = parse_size(header[1], line_no);
  const std::size_t cols = parse_size(header[2], line_no);
  const std::size_t nnz = parse_size(header[3], line_no);

  std::vector<Triplet> triplets;
  triplets.reserve(nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    if (!getline_any(in, line)) throw IoError(path + ": truncated triple list");
    ++line_no;
    const auto parts = split_ws(line);
    if (parts.size() != 3) throw MalformedRow(line_no, "expected \"row col value\"");
    const std::size_t r = parse_size(parts[0], line_no);
    const std::size_t c = parse_size(parts[1], line_no);
    if (r >= rows || c >= cols) throw MalformedRow(line_no, "index out of range");
    triplets.push_back({r, c, parse_double(parts[2], line_no)});
  }

  NamedMatrix out;
  auto read_block = [&](std::vector<std::string>& names, std::string& kind,
                        std::size_t count) {
    if (!getline_any(in, line) || line.empty() || line[0] != '#')
      throw IoError(path + ": expected a #name block");
    ++line_no;
    kind = line.substr(1);
    names.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      if (!getline_any(in, line)) throw IoError(path + ": truncated name block");
      ++line_no;
      names.push_back(line);
    }
  };
  read_block(out.row_names, out.row_kind, rows);
  read_block(out.col_names, out.col_kind, cols);
  out.m = csr_from_triplets(rows, cols, std::move(triplets));
  if (out.m.values.size() != nnz)
    throw IoError(path + ": duplicate or zero entries in triple list");
  return out;
}

void write_features(const std::string& path, const NamedFeatures& f) {
  if (f.row_names.size() != f.block.x.rows)
    throw LengthMismatch("write_features: row name count != rows");
  if (!f.col_names.empty() && f.col_names.size() != f.block.x.cols)
    throw LengthMismatch("write_features: column name count != cols");
  ordered_json j{{"kind", "features"},
                 {"provenance", provenance_name(f.block.provenance)},
                 {"rows", f.block.x.rows},
                 {"cols", f.block.x.cols},
                 {"row_names", f.row_names},
                 {"col_names", f.col_names},
                 {"data", hex_array(f.block.x.data)}};
  dump_json_file(path, j);
}

namespace {

Provenance parse_provenance(const std::string& s) {
  for (const Provenance p : {Provenance::raw, Provenance::svd_scores, Provenance::tfidf,
                             Provenance::embedding, Provenance::combined})
    if (s == provenance_name(p)) return p;
  throw IoError("unknown provenance \"" + s + "\"");
}

}  // namespace

NamedFeatures read_features(const std::string& path) {
  const ordered_json j = parse_json_file(path);
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "svd") {
      // Factor container: derive the score block U*diag(sigma).
      const SvdFile f = read_svd(path);
      NamedFeatures out;
      out.row_names = f.row_names;
      DenseMatrix scores(f.factors.u.rows, f.factors.q);
      for (std::size_t i = 0; i < scores.rows; ++i)
        for (std::size_t k = 0; k < scores.cols; ++k)
          scores.at(i, k) = f.factors.u.at(i, k) * f.factors.sigma[k];
      out.block = FeatureBlock{std::move(scores), Provenance::svd_scores};
      return out;
    }
    if (kind != "features") throw IoError(path + ": not a feature container");
    NamedFeatures out;
    out.block.provenance = parse_provenance(j.at("provenance").get<std::string>());
    out.block.x = DenseMatrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    out.row_names = j.at("row_names").get<std::vector<std::string>>();
    out.col_names = j.at("col_names").get<std::vector<std::string>>();
    out.block.x.data = unhex_array(j.at("data"));
    if (out.block.x.data.size() != out.block.x.rows * out.block.x.cols)
      throw IoError(path + ": payload size mismatch");
    if (out.row_names.size() != out.block.x.rows)
      throw IoError(path + ": row name count mismatch");
    if (!out.col_names.empty() && out.col_names.size() != out.block.x.cols)
      throw IoError(path + ": column name count mismatch");
    return out;
  } catch (const ordered_json::exception& e) {
    throw IoError(path + ": bad structure: " + e.what());
  }
}

void write_svd(const std::string& path, const SvdFile& f) {
  if (f.row_names.size() != f.factors.u.rows)
    throw LengthMismatch("write_svd: row name count != rows");
  ordered_json j{{"kind", "svd"},
                 {"rows", f.factors.u.rows},
                 {"cols", f.factors.v.rows},
                 {"q", f.factors.q},
                 {"row_names", f.row_names},
                 {"sigma", hex_array(f.factors.sigma)},
                 {"u", hex_array(f.factors.u.data)},
                 {"v", hex_array(f.factors.v.data)}};
  dump_json_file(path, j);
}

SvdFile read_svd(const std::string& path) {
  const ordered_json j = parse_json_file(path);
  try {
    if (j.at("kind").get<std::string>() != "svd")
      throw IoError(path + ": not an svd container");
    SvdFile f;
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    f.factors.q = j.at("q").get<std::size_t>();
    f.row_names = j.at("row_names").get<std::vector<std::string>>();
    f.factors.sigma = unhex_array(j.at("sigma"));
    f.factors.u = DenseMatrix(rows, f.factors.q);
    f.factors.u.data = unhex_array(j.at("u"));
    f.factors.v = DenseMatrix(cols, f.factors.q);
    f.factors.v.data = unhex_array(j.at("v"));
    if (f.factors.sigma.size() != f.factors.q ||
        f.factors.u.data.size() != rows * f.factors.q ||
        f.factors.v.data.size() != cols * f.factors.q ||
        f.row_names.size() != rows)
      throw IoError(path + ": payload size mismatch");
    return f;
  } catch (const ordered_json::exception& e) {
    throw IoError(path + ": bad structure: " + e.what());
  }
}

FlairFile read_flairs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::string line;
  if (!getline_any(in, line)) throw IoError(path + ": empty file");
  const auto header = split_csv_record(line);
  if (header.size() != 2 || header[0] != "username" || header[1] != "ideology")
    throw MalformedRow(1, "expected header \"username,ideology\"");
  FlairFile out;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t line_no = 1;
  while (getline_any(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_record(line);
    if (fields.size() != 2) throw MalformedRow(line_no, "expected 2 fields");
    if (!seen.emplace(fields[0], line_no).second)
      throw MalformedRow(line_no, "duplicate username \"" + fields[0] + "\"");
    out.usernames.push_back(fields[0]);
    // Already-recoded names pass through; anything else must be a raw flair.
    std::string_view ideo = fields[1];
    while (!ideo.empty() && (ideo.front() == ' ' || ideo.front() == '\t'))
      ideo.remove_prefix(1);
    while (!ideo.empty() && (ideo.back() == ' ' || ideo.back() == '\t'))
      ideo.remove_suffix(1);
    out.labels.push_back(is_nine_class_name(ideo) ? parse_nine_class(ideo)
                                                  : recode_flair(fields[1]));
  }
  return out;
}

void write_flairs(const std::string& path, const std::vector<std::string>& usernames,
                  const std::vector<std::string>& ideology) {
  if (usernames.size() != ideology.size())
    throw LengthMismatch("write_flairs: column lengths differ");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "username,ideology\n";
  for (std::size_t i = 0; i < usernames.size(); ++i)
    out << csv_escape(usernames[i]) << "," << csv_escape(ideology[i]) << "\n";
  if (!out) throw IoError("write failure: " + path);
}

std::vector<NineClass> join_labels(const std::vector<std::string>& row_names,
                                   const FlairFile& flairs) {
  std::unordered_map<std::string_view, NineClass> by_user;
  by_user.reserve(flairs.usernames.size());
  for (std::size_t i = 0; i < flairs.usernames.size(); ++i)
    by_user.emplace(flairs.usernames[i], flairs.labels[i]);
  std::vector<NineClass> out;
  out.reserve(row_names.size());
  for (const auto& u : row_names) {
    const auto it = by_user.find(u);
    if (it == by_user.end()) throw UnknownLabel("no flair entry for user \"" + u + "\"");
    out.push_back(it->second);
  }
  return out;
}

void write_comments(const std::string& path, const CommentsFile& c) {
  if (c.usernames.size() != c.comments.size())
    throw LengthMismatch("write_comments: column lengths differ");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (std::size_t i = 0; i < c.usernames.size(); ++i) {
    const ordered_json j{{"username", c.usernames[i]}, {"comments", c.comments[i]}};
    out << j.dump() << "\n";
  }
  if (!out) throw IoError("write failure: " + path);
}

CommentsFile read_comments(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  CommentsFile out;
  std::string line;
  std::size_t line_no = 0;
  while (getline_any(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
      out.usernames.push_back(j.at("username").get<std::string>());
      out.comments.push_back(j.at("comments").get<std::vector<std::string>>());
    } catch (const std::exception& e) {
      throw MalformedRow(line_no, std::string("bad comments record: ") + e.what());
    }
  }
  return out;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (const auto& s : lines) out << s << "\n";
  if (!out) throw IoError("write failure: " + path);
}

void write_correlations(const std::string& path, const std::vector<std::string>& terms,
                        const std::vector<double>& r) {
  if (terms.size() != r.size())
    throw LengthMismatch("write_correlations: column lengths differ");
  std::vector<std::size_t> order(terms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(r[a]), mb = std::abs(r[b]);
    if (ma != mb) return ma > mb;
    return terms[a] < terms[b];
  });
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "term,r\n";
  for (const std::size_t i : order)
    out << csv_escape(terms[i]) << "," << fmt_double(r[i]) << "\n";
  if (!out) throw IoError("write failure: " + path);
}

std::string report_json_text(const EvalReport& report) {
  ordered_json per_class = ordered_json::object();
  if (report.per_class_auc)
    for (std::size_t k = 0; k < report.class_names.size(); ++k)
      per_class[report.class_names[k]] = (*report.per_class_auc)[k];
  ordered_json prevalence = ordered_json::object();
  for (std::size_t k = 0; k < report.class_names.size(); ++k)
    prevalence[report.class_names[k]] = report.prevalence[k];
  ordered_json j{{"class_names", report.class_names},
                 {"accuracy", report.accuracy},
                 {"auc", report.auc ? ordered_json(*report.auc) : ordered_json(nullptr)},
                 {"per_class_auc", report.per_class_auc ? per_class : ordered_json(nullptr)},
                 {"prevalence", prevalence},
                 {"confusion", report.confusion},
                 {"n_train", report.n_train},
                 {"n_val", report.n_val},
                 {"n_test", report.n_test}};
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace ideolab
