#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ideolab/dense.hpp"
#include "ideolab/feature_block.hpp"

namespace ideolab {

// Pretrained token vectors. Text format: one token per line,
//   token v1 v2 ... vd
// with a fixed dimension d across lines.
struct EmbeddingTable {
  std::size_t dim = 0;
  std::unordered_map<std::string, std::vector<double>> vectors;
};

// Throws InconsistentDimension on ragged lines, DuplicateToken on repeats.
EmbeddingTable read_embeddings(std::istream& in);

// Mean of the vectors of in-table tokens; all-unknown (or empty) token lists
// give the zero vector. Token order cannot matter.
std::vector<double> average_embedding(const std::vector<std::string>& tokens,
                                      const EmbeddingTable& table);

// One row per document.
FeatureBlock embed_documents(const std::vector<std::vector<std::string>>& docs,
                             const EmbeddingTable& table);

}  // namespace ideolab
