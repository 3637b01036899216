#pragma once

#include <string>
#include <vector>

#include "ideolab/csr.hpp"
#include "ideolab/eval.hpp"
#include "ideolab/feature_block.hpp"
#include "ideolab/labels.hpp"
#include "ideolab/svd.hpp"

namespace ideolab {

// Shortest round-tripping decimal text for a double (to_chars).
std::string fmt_double(double v);

// Sparse matrix text container:
//   %%csr <rows> <cols> <nnz>
//   <row> <col> <value>     (0-based, nnz lines, CSR order)
//   #<row_kind>             followed by one row name per line
//   #<col_kind>             followed by one column name per line
struct NamedMatrix {
  CsrMatrix m;
  std::vector<std::string> row_names;
  std::vector<std::string> col_names;
  std::string row_kind = "users";
  std::string col_kind = "subreddits";
};

void write_matrix(const std::string& path, const NamedMatrix& m);
NamedMatrix read_matrix(const std::string& path);

// Dense feature container (JSON, hex-f64 payload), rows keyed by username.
struct NamedFeatures {
  FeatureBlock block;
  std::vector<std::string> row_names;
  std::vector<std::string> col_names;  // empty when columns are anonymous
};

void write_features(const std::string& path, const NamedFeatures& f);
// Also accepts an SVD factor container, yielding the score block U*diag(sigma).
NamedFeatures read_features(const std::string& path);

// SVD factor container (JSON): shape, q, sigma, row-major U and V, row names.
struct SvdFile {
  TruncatedSvd factors;
  std::vector<std::string> row_names;
};

void write_svd(const std::string& path, const SvdFile& f);
SvdFile read_svd(const std::string& path);

// User-flair CSV `username,ideology`; ideology is either a raw flair or an
// already-recoded nine-class name, detected per row by membership test.
struct FlairFile {
  std::vector<std::string> usernames;
  std::vector<NineClass> labels;
};

FlairFile read_flairs(const std::string& path);
// Writes the given ideology strings verbatim (raw flairs or class names).
void write_flairs(const std::string& path, const std::vector<std::string>& usernames,
                  const std::vector<std::string>& ideology);

// Labels for each row name, joined by username; throws UnknownLabel when a
// row has no flair entry.
std::vector<NineClass> join_labels(const std::vector<std::string>& row_names,
                                   const FlairFile& flairs);

// JSON Lines, one {"username": ..., "comments": [...]} object per user.
struct CommentsFile {
  std::vector<std::string> usernames;
  std::vector<std::vector<std::string>> comments;
};

void write_comments(const std::string& path, const CommentsFile& c);
CommentsFile read_comments(const std::string& path);

// One feature name per line.
void write_lines(const std::string& path, const std::vector<std::string>& lines);

// CSV `term,r` sorted by |r| descending (ties by term ascending).
void write_correlations(const std::string& path, const std::vector<std::string>& terms,
                        const std::vector<double>& r);

// Deterministic JSON rendering of an evaluation report.
std::string report_json_text(const EvalReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ideolab
