#include "ideolab/textfeat.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "ideolab/errors.hpp"
#include "ideolab/porter.hpp"

namespace ideolab {

namespace {

bool is_url_start(std::string_view s, std::size_t i) {
  const auto starts = [&](std::string_view prefix) {
    return s.size() - i >= prefix.size() && s.substr(i, prefix.size()) == prefix;
  };
  // Word boundary: start of text or preceded by non-alphanumeric.
  if (i > 0 && (std::isalnum(static_cast<unsigned char>(s[i - 1])) != 0)) return false;
  return starts("http://") || starts("https://") || starts("www.");
}

}  // namespace

std::vector<std::string> whitespace_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::vector<std::string> clean(std::string_view text) {
  std::string scrubbed;
  scrubbed.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == '<') {
      // HTML tag: skip through the closing '>' (or the rest of the text).
      std::size_t close = text.find('>', i);
      if (close == std::string_view::npos) break;
      scrubbed.push_back(' ');
      i = close + 1;
      continue;
    }
    if (is_url_start(text, i)) {
      while (i < text.size() &&
             std::isspace(static_cast<unsigned char>(text[i])) == 0)
        ++i;
      scrubbed.push_back(' ');
      continue;
    }
    if (c >= 0x80 || (std::isalnum(c) == 0 && std::isspace(c) == 0)) {
      scrubbed.push_back(' ');  // punctuation and non-ASCII become separators
    } else {
      scrubbed.push_back(static_cast<char>(std::tolower(c)));
    }
    ++i;
  }

  std::vector<std::string> tokens;
  std::string cur;
  const auto flush = [&] {
    if (cur.size() >= 2) tokens.push_back(porter_stem(cur));
    cur.clear();
  };
  for (const char c : scrubbed) {
    if (std::isspace(static_cast<unsigned char>(c)) != 0) flush();
    else cur.push_back(c);
  }
  flush();
  return tokens;
}

TfidfModel tfidf_fit(const std::vector<std::vector<std::string>>& docs,
                     double max_df, double min_df, std::size_t max_features) {
  const std::size_t d = docs.size();
  if (d == 0) throw EmptyVocabulary("tfidf_fit: no documents");
  if (max_df <= 0.0) throw ConfigInvalid("tfidf_fit: max_df must be positive");
  if (min_df < 0.0) throw ConfigInvalid("tfidf_fit: min_df must be nonnegative");
  if (max_features == 0) throw ConfigInvalid("tfidf_fit: max_features must be >= 1");

  // Document frequency and total corpus count per term. std::map gives the
  // deterministic (lexicographic) iteration the tie rules depend on.
  std::map<std::string, std::pair<std::size_t, std::size_t>> stats;  // term -> {df, tf}
  for (const auto& doc : docs) {
    std::map<std::string, std::size_t> counts;
    for (const auto& tok : doc) ++counts[tok];
    for (const auto& [term, count] : counts) {
      auto& st = stats[term];
      st.first += 1;
      st.second += count;
    }
  }

  const double df_max_real = max_df >= 1.0 ? max_df : std::floor(max_df * static_cast<double>(d) + 1e-9);
  const double df_min_real = min_df >= 1.0 ? min_df : std::ceil(min_df * static_cast<double>(d) - 1e-9);

  struct Term {
    const std::string* term;
    std::size_t df;
    std::size_t tf;
  };
  std::vector<Term> kept;
  for (const auto& [term, st] : stats) {
    const double df = static_cast<double>(st.first);
    if (df < df_min_real || df > df_max_real) continue;
    kept.push_back({&term, st.first, st.second});
  }
  if (kept.empty()) throw EmptyVocabulary("tfidf_fit: no terms survive the df filters");

  if (kept.size() > max_features) {
    std::stable_sort(kept.begin(), kept.end(), [](const Term& a, const Term& b) {
      if (a.tf != b.tf) return a.tf > b.tf;
      return *a.term < *b.term;
    });
    kept.resize(max_features);
    std::sort(kept.begin(), kept.end(),
              [](const Term& a, const Term& b) { return *a.term < *b.term; });
  }

  TfidfModel model;
  model.n_docs_fit = d;
  model.vocabulary.reserve(kept.size());
  model.idf.reserve(kept.size());
  for (const auto& t : kept) {
    model.index.emplace(*t.term, model.vocabulary.size());
    model.vocabulary.push_back(*t.term);
    model.idf.push_back(std::log((static_cast<double>(d) + 1.0) /
                                 (static_cast<double>(t.df) + 1.0)) +
                        1.0);
  }
  return model;
}

CsrMatrix tfidf_transform(const TfidfModel& model,
                          const std::vector<std::vector<std::string>>& docs) {
  CsrMatrix out;
  out.rows = docs.size();
  out.cols = model.vocabulary.size();
  out.row_ptr.assign(1, 0);
  std::vector<double> row_acc(out.cols, 0.0);
  std::vector<std::uint32_t> touched;
  for (const auto& doc : docs) {
    touched.clear();
    for (const auto& tok : doc) {
      const auto it = model.index.find(tok);
      if (it == model.index.end()) continue;
      const auto c = static_cast<std::uint32_t>(it->second);
      if (row_acc[c] == 0.0) touched.push_back(c);
      row_acc[c] += 1.0;
    }
    std::sort(touched.begin(), touched.end());
    const double total = static_cast<double>(doc.size());  // full token count
    double ss = 0.0;
    for (const auto c : touched) {
      const double v = (row_acc[c] / total) * model.idf[c];
      row_acc[c] = v;
      ss += v * v;
    }
    const double inv = ss > 0.0 ? 1.0 / std::sqrt(ss) : 0.0;
    for (const auto c : touched) {
      out.col_idx.push_back(c);
      out.values.push_back(row_acc[c] * inv);
      row_acc[c] = 0.0;
    }
    out.row_ptr.push_back(out.col_idx.size());
  }
  return out;
}

}  // namespace ideolab
