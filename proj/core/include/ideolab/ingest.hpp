#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "ideolab/csr.hpp"

namespace ideolab {

enum class InteractionKind { post, comment };

struct InteractionRecord {
  std::string username;
  InteractionKind kind = InteractionKind::comment;
  std::optional<std::string> title;  // absent when the CSV field is empty
  std::int64_t score = 0;
  std::string time;  // opaque timestamp text, carried through untouched
  std::string subreddit;
};

// Parses the interaction-history CSV:
//   username,interaction,title,score,time,subreddit
// Header row required. Throws MalformedRow (with the 1-based data row number)
// on wrong field count, unknown interaction kind, or non-integer score.
std::vector<InteractionRecord> parse_history(std::istream& in);

// User x subreddit interaction-count matrix. Rows and columns are ordered
// lexicographically by name; that ordering is the canonical one every
// downstream artifact relies on.
struct InteractionMatrix {
  CsrMatrix matrix;
  std::vector<std::string> users;       // row names
  std::vector<std::string> subreddits;  // column names
};

// Builds the count matrix by accumulating fixed-size chunks of records.
// The result is identical for any chunk_size >= 1 and any record order.
InteractionMatrix pivot_chunked(const std::vector<InteractionRecord>& records,
                                std::size_t chunk_size = 100000);

// The explicitly political subreddits dropped before any modelling.
const std::vector<std::string>& political_subreddits();

// Drops political_subreddits() columns (exact, case-sensitive name match).
InteractionMatrix remove_political(const InteractionMatrix& m);

// Alternately drops users with row sum < min_user_total and subreddits with
// column sum < min_subreddit_total until both constraints hold jointly
// (fixpoint). Sums are of stored interaction counts.
InteractionMatrix trim(const InteractionMatrix& m, double min_user_total = 50.0,
                       double min_subreddit_total = 50.0);

// Replaces every stored count with 1.0.
InteractionMatrix binarize(const InteractionMatrix& m);

}  // namespace ideolab
