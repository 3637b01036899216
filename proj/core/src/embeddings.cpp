#include "ideolab/embeddings.hpp"

#include <charconv>
#include <string_view>

#include "ideolab/csv.hpp"
#include "ideolab/errors.hpp"

namespace ideolab {

namespace {

double parse_double(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw MalformedRow(line_no, "bad embedding value: \"" + std::string(s) + "\"");
  return v;
}

}  // namespace

EmbeddingTable read_embeddings(std::istream& in) {
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  while (getline_any(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> parts;
    {
      std::string_view sv = line;
      std::size_t i = 0;
      while (i < sv.size()) {
        while (i < sv.size() && sv[i] == ' ') ++i;
        const std::size_t start = i;
        while (i < sv.size() && sv[i] != ' ') ++i;
        if (i > start) parts.push_back(sv.substr(start, i - start));
      }
    }
    if (parts.size() < 2)
      throw MalformedRow(line_no, "embedding line needs a token and at least one value");
    std::string token(parts[0]);
    std::vector<double> vec;
    vec.reserve(parts.size() - 1);
    for (std::size_t i = 1; i < parts.size(); ++i)
      vec.push_back(parse_double(parts[i], line_no));
    if (table.dim == 0) {
      table.dim = vec.size();
    } else if (vec.size() != table.dim) {
      throw InconsistentDimension("embeddings: line " + std::to_string(line_no) + " has " +
                                  std::to_string(vec.size()) + " values, expected " +
                                  std::to_string(table.dim));
    }
    if (!table.vectors.emplace(std::move(token), std::move(vec)).second)
      throw DuplicateToken(std::string(parts[0]));
  }
  return table;
}

std::vector<double> average_embedding(const std::vector<std::string>& tokens,
                                      const EmbeddingTable& table) {
  std::vector<double> acc(table.dim, 0.0);
  std::size_t hits = 0;
  for (const auto& tok : tokens) {
    const auto it = table.vectors.find(tok);
    if (it == table.vectors.end()) continue;
    ++hits;
    for (std::size_t i = 0; i < table.dim; ++i) acc[i] += it->second[i];
  }
  if (hits > 0) {
    const double inv = 1.0 / static_cast<double>(hits);
    for (double& v : acc) v *= inv;
  }
  return acc;
}

FeatureBlock embed_documents(const std::vector<std::vector<std::string>>& docs,
                             const EmbeddingTable& table) {
  FeatureBlock b;
  b.provenance = Provenance::embedding;
  b.x = DenseMatrix(docs.size(), table.dim);
  for (std::size_t r = 0; r < docs.size(); ++r) {
    const auto row = average_embedding(docs[r], table);
    for (std::size_t c = 0; c < table.dim; ++c) b.x.at(r, c) = row[c];
  }
  return b;
}

}  // namespace ideolab
