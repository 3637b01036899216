#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ideolab/csr.hpp"

namespace ideolab {

// Document cleaning, applied in this fixed order: remove URLs and HTML tags,
// replace punctuation and non-ASCII bytes with spaces, lowercase, split on
// whitespace, drop single-character tokens, Porter-stem each token.
std::vector<std::string> clean(std::string_view text);

// Tokens only (no stemming/minimum length); used where raw text is wanted.
std::vector<std::string> whitespace_tokens(std::string_view text);

struct TfidfModel {
  std::vector<std::string> vocabulary;  // index = column
  std::vector<double> idf;              // aligned with vocabulary
  std::unordered_map<std::string, std::size_t> index;
  std::size_t n_docs_fit = 0;
};

// Fits the vocabulary and idf weights on cleaned documents.
//   - max_df / min_df: values >= 1.0 are absolute document counts; values
//     < 1.0 are fractions of the corpus resolved as min = ceil(f*D),
//     max = floor(f*D). A term survives iff min <= DF <= max.
//   - If more terms survive than max_features, the most frequent by total
//     corpus count are kept (ties broken by term, ascending).
//   - idf_w = ln((D + 1) / (D_w + 1)) + 1, so a term in every document gets
//     weight exactly 1 and idf decreases as DF grows.
// Throws EmptyVocabulary if nothing survives.
TfidfModel tfidf_fit(const std::vector<std::vector<std::string>>& docs,
                     double max_df = 0.95, double min_df = 2.0,
                     std::size_t max_features = 20000);

// Row i: tf(w, i) * idf_w, where tf divides by the document's FULL token
// count (tokens outside the vocabulary still count in the denominator), then
// the row is scaled to unit L2 norm. Documents with no in-vocabulary tokens
// produce all-zero rows.
CsrMatrix tfidf_transform(const TfidfModel& model,
                          const std::vector<std::vector<std::string>>& docs);

}  // namespace ideolab
