#include "ideolab/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "ideolab/csv.hpp"
#include "ideolab/errors.hpp"

namespace ideolab {

namespace {

std::int64_t parse_score(const std::string& s, std::size_t row) {
  std::int64_t value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw MalformedRow(row, "score is not an integer: \"" + s + "\"");
  return value;
}

InteractionKind parse_kind(const std::string& s, std::size_t row) {
  if (s == "post") return InteractionKind::post;
  if (s == "comment") return InteractionKind::comment;
  throw MalformedRow(row, "unknown interaction kind: \"" + s + "\"");
}

}  // namespace

std::vector<InteractionRecord> parse_history(std::istream& in) {
  std::string line;
  if (!getline_any(in, line)) throw IoError("history: empty input, header expected");
  std::vector<InteractionRecord> records;
  std::size_t row = 0;
  while (getline_any(in, line)) {
    ++row;
    if (line.empty()) continue;
    auto fields = split_csv_record(line);
    if (fields.size() != 6)
      throw MalformedRow(row, "expected 6 fields, got " + std::to_string(fields.size()));
    InteractionRecord rec;
    rec.username = std::move(fields[0]);
    rec.kind = parse_kind(fields[1], row);
    if (!fields[2].empty()) rec.title = std::move(fields[2]);
    rec.score = parse_score(fields[3], row);
    rec.time = std::move(fields[4]);
    rec.subreddit = std::move(fields[5]);
    records.push_back(std::move(rec));
  }
  return records;
}

InteractionMatrix pivot_chunked(const std::vector<InteractionRecord>& records,
                                std::size_t chunk_size) {
  if (chunk_size == 0) throw ConfigInvalid("pivot_chunked: chunk_size must be >= 1");
  // Global accumulator keyed by name pairs; chunks only bound the size of the
  // per-chunk scratch map, so any chunking yields the same totals.
  std::map<std::pair<std::string, std::string>, double> totals;
  std::size_t i = 0;
  while (i < records.size()) {
    const std::size_t end = std::min(records.size(), i + chunk_size);
    std::map<std::pair<std::string, std::string>, double> chunk;
    for (; i < end; ++i)
      chunk[{records[i].username, records[i].subreddit}] += 1.0;
    for (auto& [key, count] : chunk) totals[key] += count;
  }

  InteractionMatrix out;
  {
    std::unordered_set<std::string> users, subs;
    for (const auto& [key, count] : totals) {
      users.insert(key.first);
      subs.insert(key.second);
    }
    out.users.assign(users.begin(), users.end());
    out.subreddits.assign(subs.begin(), subs.end());
    std::sort(out.users.begin(), out.users.end());
    std::sort(out.subreddits.begin(), out.subreddits.end());
  }
  std::unordered_map<std::string, std::size_t> urow, scol;
  for (std::size_t r = 0; r < out.users.size(); ++r) urow[out.users[r]] = r;
  for (std::size_t c = 0; c < out.subreddits.size(); ++c) scol[out.subreddits[c]] = c;

  std::vector<Triplet> trips;
  trips.reserve(totals.size());
  for (const auto& [key, count] : totals)
    trips.push_back({urow[key.first], scol[key.second], count});
  out.matrix = csr_from_triplets(out.users.size(), out.subreddits.size(), std::move(trips));
  return out;
}

const std::vector<std::string>& political_subreddits() {
  static const std::vector<std::string> list = {
      "r/Libertarian", "r/Anarchism",  "r/socialism",     "r/progressive",
      "r/Conservative", "r/democrats", "r/Liberal",       "r/Republican",
      "r/Liberty",      "r/Labour",    "r/Marxism",       "r/Capitalism",
      "r/Anarchist",    "r/republicans", "r/conservatives",
  };
  return list;
}

InteractionMatrix remove_political(const InteractionMatrix& m) {
  const auto& drop = political_subreddits();
  const std::unordered_set<std::string> dropset(drop.begin(), drop.end());
  std::vector<std::size_t> keep;
  InteractionMatrix out;
  for (std::size_t c = 0; c < m.subreddits.size(); ++c) {
    if (dropset.count(m.subreddits[c])) continue;
    keep.push_back(c);
    out.subreddits.push_back(m.subreddits[c]);
  }
  out.users = m.users;
  out.matrix = m.matrix.select_cols(keep);
  return out;
}

InteractionMatrix trim(const InteractionMatrix& m, double min_user_total,
                       double min_subreddit_total) {
  InteractionMatrix cur = m;
  for (;;) {
    const auto rsum = cur.matrix.row_sums();
    std::vector<std::size_t> keep_rows;
    for (std::size_t r = 0; r < cur.matrix.rows; ++r)
      if (rsum[r] >= min_user_total) keep_rows.push_back(r);
    const bool rows_changed = keep_rows.size() != cur.matrix.rows;
    if (rows_changed) {
      std::vector<std::string> users;
      for (const std::size_t r : keep_rows) users.push_back(cur.users[r]);
      cur.users = std::move(users);
      cur.matrix = cur.matrix.select_rows(keep_rows);
    }

    const auto csum = cur.matrix.col_sums();
    std::vector<std::size_t> keep_cols;
    for (std::size_t c = 0; c < cur.matrix.cols; ++c)
      if (csum[c] >= min_subreddit_total) keep_cols.push_back(c);
    const bool cols_changed = keep_cols.size() != cur.matrix.cols;
    if (cols_changed) {
      std::vector<std::string> subs;
      for (const std::size_t c : keep_cols) subs.push_back(cur.subreddits[c]);
      cur.subreddits = std::move(subs);
      cur.matrix = cur.matrix.select_cols(keep_cols);
    }
    if (!rows_changed && !cols_changed) return cur;
  }
}

InteractionMatrix binarize(const InteractionMatrix& m) {
  InteractionMatrix out;
  out.users = m.users;
  out.subreddits = m.subreddits;
  out.matrix = m.matrix.binarized();
  return out;
}

}  // namespace ideolab
