#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ideolab/errors.hpp"
#include "ideolab/ingest.hpp"
#include "ideolab/rng.hpp"

using namespace ideolab;

namespace {

std::vector<InteractionRecord> records_from(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<InteractionRecord> out;
  for (const auto& [user, sub] : pairs) {
    InteractionRecord r;
    r.username = user;
    r.subreddit = sub;
    out.push_back(r);
  }
  return out;
}

// Single-pass reference pivot: count every (user, subreddit) pair, order
// names lexicographically.
std::map<std::pair<std::string, std::string>, double> pivot_oracle(
    const std::vector<InteractionRecord>& records) {
  std::map<std::pair<std::string, std::string>, double> counts;
  for (const auto& r : records) counts[{r.username, r.subreddit}] += 1.0;
  return counts;
}

std::map<std::pair<std::string, std::string>, double> cells_of(
    const InteractionMatrix& m) {
  std::map<std::pair<std::string, std::string>, double> out;
  for (std::size_t i = 0; i < m.matrix.rows; ++i)
    for (std::size_t p = m.matrix.row_ptr[i]; p < m.matrix.row_ptr[i + 1]; ++p)
      out[{m.users[i], m.subreddits[m.matrix.col_idx[p]]}] = m.matrix.values[p];
  return out;
}

// Alternating-removal fixpoint on a dense copy.
InteractionMatrix trim_oracle(InteractionMatrix m, double min_user, double min_sub) {
  for (;;) {
    std::vector<std::size_t> user_keep, sub_keep;
    for (std::size_t i = 0; i < m.matrix.rows; ++i) {
      double s = 0.0;
      for (std::size_t p = m.matrix.row_ptr[i]; p < m.matrix.row_ptr[i + 1]; ++p)
        s += m.matrix.values[p];
      if (s >= min_user) user_keep.push_back(i);
    }
    if (user_keep.size() != m.matrix.rows) {
      InteractionMatrix next;
      next.matrix = m.matrix.select_rows(user_keep);
      next.subreddits = m.subreddits;
      for (const std::size_t i : user_keep) next.users.push_back(m.users[i]);
      m = std::move(next);
      continue;
    }
    std::vector<double> col_sum(m.matrix.cols, 0.0);
    for (std::size_t p = 0; p < m.matrix.values.size(); ++p)
      col_sum[m.matrix.col_idx[p]] += m.matrix.values[p];
    for (std::size_t c = 0; c < m.matrix.cols; ++c)
      if (col_sum[c] >= min_sub) sub_keep.push_back(c);
    if (sub_keep.size() == m.matrix.cols) return m;
    InteractionMatrix next;
    next.matrix = m.matrix.select_cols(sub_keep);
    next.users = m.users;
    for (const std::size_t c : sub_keep) next.subreddits.push_back(m.subreddits[c]);
    m = std::move(next);
  }
}

}  // namespace

TEST_CASE("history rows parse field by field") {
  std::istringstream in(
      "username,interaction,title,score,time,subreddit\n"
      "u1,post,GTA V,43,10:32 2/1/21,r/gaming\n"
      "u1,comment,,12,t,r/x\r\n");
  const auto records = parse_history(in);
  REQUIRE(records.size() == 2);
  CHECK(records[0].username == "u1");
  CHECK(records[0].kind == InteractionKind::post);
  REQUIRE(records[0].title.has_value());
  CHECK(*records[0].title == "GTA V");
  CHECK(records[0].score == 43);
  CHECK(records[0].time == "10:32 2/1/21");
  CHECK(records[0].subreddit == "r/gaming");
  CHECK(records[1].kind == InteractionKind::comment);
  CHECK(!records[1].title.has_value());
}

TEST_CASE("history parsing rejects malformed rows with their row number") {
  const auto expect_row = [](const std::string& body, std::size_t row) {
    std::istringstream in("username,interaction,title,score,time,subreddit\n" + body);
    try {
      parse_history(in);
      FAIL("expected MalformedRow");
    } catch (const MalformedRow& e) {
      CHECK(e.row == row);
    }
  };
  expect_row("u1,post,only,three\n", 1);
  expect_row("u1,post,t,notanumber,t,r/x\n", 1);
  expect_row("u1,vote,t,1,t,r/x\n", 1);
  expect_row("u1,post,t,1,t,r/x\nu2,post,t,1,t\n", 2);
}

TEST_CASE("pivot counts single and repeated cells") {
  const auto one = pivot_chunked(records_from({{"u1", "r/a"}}));
  CHECK(one.matrix.rows == 1);
  CHECK(one.matrix.cols == 1);
  CHECK(one.matrix.values == std::vector<double>{1.0});

  const auto two = pivot_chunked(records_from({{"u1", "r/a"}, {"u1", "r/a"}}));
  CHECK(two.matrix.values == std::vector<double>{2.0});
}

TEST_CASE("pivot is invariant to chunk size and record order") {
  Rng rng(7);
  std::vector<InteractionRecord> records;
  for (int i = 0; i < 300; ++i) {
    InteractionRecord r;
    r.username = "u" + std::to_string(rng.uniform_int(12));
    r.subreddit = "r/s" + std::to_string(rng.uniform_int(9));
    records.push_back(r);
  }
  const auto oracle = pivot_oracle(records);
  for (const std::size_t chunk : {std::size_t{1}, std::size_t{7}, std::size_t{300},
                                  std::size_t{100000}}) {
    const auto m = pivot_chunked(records, chunk);
    CHECK(cells_of(m) == oracle);
    CHECK(std::is_sorted(m.users.begin(), m.users.end()));
    CHECK(std::is_sorted(m.subreddits.begin(), m.subreddits.end()));
  }
  auto shuffled = records;
  rng.shuffle(shuffled);
  CHECK(cells_of(pivot_chunked(shuffled, 11)) == oracle);
}

TEST_CASE("political subreddits are dropped by exact name") {
  CHECK(political_subreddits().size() == 15);
  const auto m = pivot_chunked(records_from({{"u1", "r/Libertarian"},
                                             {"u1", "r/conservative"},
                                             {"u2", "r/gaming"},
                                             {"u2", "r/conservatives"}}));
  const auto cleaned = remove_political(m);
  const std::set<std::string> remaining(cleaned.subreddits.begin(),
                                        cleaned.subreddits.end());
  CHECK(remaining == std::set<std::string>{"r/conservative", "r/gaming"});
  CHECK(cleaned.users == m.users);  // rows untouched even when emptied

  const auto noop = pivot_chunked(records_from({{"u1", "r/gaming"}}));
  CHECK(cells_of(remove_political(noop)) == cells_of(noop));
}

TEST_CASE("trim reaches the joint fixpoint") {
  // u1 only interacts in r/b; dropping r/b (column sum 2 < 3) must cascade
  // into dropping u1 (row sum 2 >= 2 before, 0 after).
  auto m = pivot_chunked(records_from({{"u1", "r/b"},
                                       {"u1", "r/b"},
                                       {"u2", "r/a"},
                                       {"u2", "r/a"},
                                       {"u2", "r/a"},
                                       {"u3", "r/a"},
                                       {"u3", "r/a"}}));
  const auto trimmed = trim(m, 2.0, 3.0);
  CHECK(trimmed.users == std::vector<std::string>{"u2", "u3"});
  CHECK(trimmed.subreddits == std::vector<std::string>{"r/a"});
  for (std::size_t i = 0; i < trimmed.matrix.rows; ++i) {
    double s = 0.0;
    for (std::size_t p = trimmed.matrix.row_ptr[i]; p < trimmed.matrix.row_ptr[i + 1];
         ++p)
      s += trimmed.matrix.values[p];
    CHECK(s >= 2.0);
  }
}

TEST_CASE("trim equals the brute-force fixpoint on random matrices") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<InteractionRecord> records;
    const std::size_t n = 4 + rng.uniform_int(7);
    for (std::size_t i = 0; i < 3 * n; ++i) {
      InteractionRecord r;
      r.username = "u" + std::to_string(rng.uniform_int(n));
      r.subreddit = "r/s" + std::to_string(rng.uniform_int(n));
      r.score = static_cast<std::int64_t>(rng.uniform_int(5));
      records.push_back(r);
    }
    const auto m = pivot_chunked(records);
    const double min_user = 1.0 + static_cast<double>(rng.uniform_int(3));
    const double min_sub = 1.0 + static_cast<double>(rng.uniform_int(3));
    const auto got = trim(m, min_user, min_sub);
    const auto want = trim_oracle(m, min_user, min_sub);
    CHECK(got.users == want.users);
    CHECK(got.subreddits == want.subreddits);
    CHECK(cells_of(got) == cells_of(want));
  }
}

TEST_CASE("trim with zero thresholds is the identity") {
  const auto m = pivot_chunked(records_from({{"u1", "r/a"}, {"u2", "r/b"}}));
  const auto t = trim(m, 0.0, 0.0);
  CHECK(t.users == m.users);
  CHECK(cells_of(t) == cells_of(m));
}

TEST_CASE("binarize maps every stored count to one and is idempotent") {
  const auto m = pivot_chunked(
      records_from({{"u1", "r/a"}, {"u1", "r/a"}, {"u1", "r/a"}, {"u2", "r/b"}}));
  const auto b = binarize(m);
  for (const double v : b.matrix.values) CHECK(v == 1.0);
  CHECK(b.matrix.nnz() == m.matrix.nnz());
  const auto bb = binarize(b);
  CHECK(cells_of(bb) == cells_of(b));
}
