#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "ideolab/csr.hpp"
#include "ideolab/dense.hpp"
#include "ideolab/errors.hpp"
#include "ideolab/rng.hpp"
#include "ideolab/svd.hpp"

using namespace ideolab;

namespace {

CsrMatrix random_sparse(Rng& rng, std::size_t rows, std::size_t cols,
                        double density = 0.4) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (rng.uniform() < density) t.push_back({i, j, rng.normal()});
  return csr_from_triplets(rows, cols, t);
}

Eigen::MatrixXd to_eigen(const CsrMatrix& m) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.rows),
                                            static_cast<Eigen::Index>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t p = m.row_ptr[i]; p < m.row_ptr[i + 1]; ++p)
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m.col_idx[p])) =
          m.values[p];
  return e;
}

double max_abs_offdiag_gram(const DenseMatrix& q) {
  // max |Q^T Q - I|
  double worst = 0.0;
  for (std::size_t a = 0; a < q.cols; ++a)
    for (std::size_t b = 0; b < q.cols; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < q.rows; ++i) dot += q.at(i, a) * q.at(i, b);
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

}  // namespace

TEST_CASE("triplets build canonical csr") {
  // Unordered input, one duplicate pair, one pair cancelling to zero.
  std::vector<Triplet> t = {{1, 2, 5.0}, {0, 1, 1.0}, {0, 0, 2.0},
                            {1, 2, -1.0}, {0, 2, 3.0}, {1, 0, 4.0},
                            {1, 0, -4.0}};
  const CsrMatrix m = csr_from_triplets(2, 3, t);
  CHECK(m.rows == 2);
  CHECK(m.cols == 3);
  CHECK(m.row_ptr == std::vector<std::size_t>{0, 3, 4});
  CHECK(m.col_idx == std::vector<std::uint32_t>{0, 1, 2, 2});
  CHECK(m.values == std::vector<double>{2.0, 1.0, 3.0, 4.0});
  CHECK(m.at(1, 2) == 4.0);
  CHECK(m.at(1, 0) == 0.0);
  CHECK_THROWS_AS(m.at(2, 0), DimensionError);
  CHECK_THROWS_AS(csr_from_triplets(2, 3, {{2, 0, 1.0}}), DimensionError);
}

TEST_CASE("dense round trip preserves structure") {
  Rng rng(3);
  const CsrMatrix m = random_sparse(rng, 7, 5);
  const auto dense = m.to_dense();
  const CsrMatrix back = csr_from_dense(7, 5, dense);
  CHECK(back.structurally_equal(m));
  CHECK(back.values == m.values);
}

TEST_CASE("row and column reductions match the dense oracle") {
  Rng rng(11);
  const CsrMatrix m = random_sparse(rng, 6, 9);
  const auto dense = m.to_dense();
  const auto rs = m.row_sums();
  const auto cs = m.col_sums();
  const auto rn = m.row_nnz();
  const auto cn = m.col_nnz();
  double frob = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 9; ++j) s += dense[i * 9 + j];
    CHECK(rs[i] == doctest::Approx(s).epsilon(1e-12));
  }
  for (std::size_t j = 0; j < 9; ++j) {
    double s = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < 6; ++i) {
      s += dense[i * 9 + j];
      if (dense[i * 9 + j] != 0.0) ++k;
    }
    CHECK(cs[j] == doctest::Approx(s).epsilon(1e-12));
    CHECK(cn[j] == k);
  }
  for (const double v : dense) frob += v * v;
  CHECK(m.frobenius_norm_squared() == doctest::Approx(frob).epsilon(1e-12));
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < 6; ++i) nnz += rn[i];
  CHECK(nnz == m.nnz());
}

TEST_CASE("matrix-vector products match the dense oracle") {
  Rng rng(12);
  const CsrMatrix m = random_sparse(rng, 8, 6);
  std::vector<double> x(6), yt(8);
  for (double& v : x) v = rng.normal();
  for (double& v : yt) v = rng.normal();
  const auto dense = m.to_dense();
  const auto ax = m.multiply(x);
  const auto aty = m.multiply_transposed(yt);
  for (std::size_t i = 0; i < 8; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 6; ++j) s += dense[i * 6 + j] * x[j];
    CHECK(ax[i] == doctest::Approx(s).epsilon(1e-12));
  }
  for (std::size_t j = 0; j < 6; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < 8; ++i) s += dense[i * 6 + j] * yt[i];
    CHECK(aty[j] == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("row and column selection") {
  Rng rng(13);
  const CsrMatrix m = random_sparse(rng, 6, 6);
  const std::vector<std::size_t> rows = {1, 1, 4};  // duplication allowed
  const CsrMatrix r = m.select_rows(rows);
  CHECK(r.rows == 3);
  for (std::size_t j = 0; j < 6; ++j) {
    CHECK(r.at(0, j) == m.at(1, j));
    CHECK(r.at(1, j) == m.at(1, j));
    CHECK(r.at(2, j) == m.at(4, j));
  }
  const std::vector<std::size_t> cols = {0, 3, 5};
  const CsrMatrix c = m.select_cols(cols);
  CHECK(c.cols == 3);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(c.at(i, j) == m.at(i, cols[j]));
  CHECK_THROWS_AS(m.select_cols(std::vector<std::size_t>{3, 1}), DimensionError);
}

TEST_CASE("binarize and row normalization") {
  const CsrMatrix m = csr_from_triplets(3, 3, {{0, 0, 3.0}, {0, 1, -4.0}, {2, 2, 0.5}});
  const CsrMatrix b = m.binarized();
  CHECK(b.values == std::vector<double>{1.0, 1.0, 1.0});
  CsrMatrix n = m;
  n.normalize_rows_l2();
  CHECK(n.at(0, 0) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(n.at(0, 1) == doctest::Approx(-0.8).epsilon(1e-12));
  CHECK(n.at(2, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(n.row_ptr[2] == n.row_ptr[1]);  // empty row untouched
}

TEST_CASE("dense matmul and transpose match naive loops") {
  Rng rng(21);
  DenseMatrix a(4, 3), b(3, 5);
  for (double& v : a.data) v = rng.normal();
  for (double& v : b.data) v = rng.normal();
  const DenseMatrix ab = matmul(a, b);
  const DenseMatrix atb = matmul_at_b(a.transposed(), b);  // (a^T)^T b = a b
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += a.at(i, k) * b.at(k, j);
      CHECK(ab.at(i, j) == doctest::Approx(s).epsilon(1e-12));
      CHECK(atb.at(i, j) == doctest::Approx(s).epsilon(1e-12));
    }
  CHECK_THROWS_AS(matmul(b, b), DimensionError);
}

TEST_CASE("householder qr produces an orthonormal basis of the range") {
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 3 + rng.uniform_int(10);
    const std::size_t cols = 1 + rng.uniform_int(rows);
    DenseMatrix a(rows, cols);
    for (double& v : a.data) v = rng.normal();
    const DenseMatrix q = thin_qr_q(a);
    CHECK(q.rows == rows);
    CHECK(q.cols == cols);
    CHECK(max_abs_offdiag_gram(q) < 1e-10);
    // Q Q^T a = a when a has full column rank (range is preserved).
    const DenseMatrix qta = matmul_at_b(q, a);
    const DenseMatrix qqta = matmul(q, qta);
    for (std::size_t i = 0; i < a.data.size(); ++i)
      CHECK(qqta.data[i] == doctest::Approx(a.data[i]).epsilon(1e-8));
  }
}

TEST_CASE("small svd reconstructs and matches eigen") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 2 + rng.uniform_int(10);
    const std::size_t cols = 2 + rng.uniform_int(10);
    DenseMatrix a(rows, cols);
    for (double& v : a.data) v = rng.normal();
    const SmallSvd f = small_svd(a);
    const std::size_t k = std::min(rows, cols);
    REQUIRE(f.sigma.size() == k);
    CHECK(std::is_sorted(f.sigma.rbegin(), f.sigma.rend()));

    Eigen::MatrixXd e(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a.at(i, j);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(e).singularValues();
    for (std::size_t i = 0; i < k; ++i)
      CHECK(f.sigma[i] == doctest::Approx(sv(static_cast<Eigen::Index>(i))).epsilon(1e-10));

    // a = U diag(sigma) V^T entrywise.
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t t = 0; t < k; ++t) s += f.u.at(i, t) * f.sigma[t] * f.v.at(j, t);
        CHECK(s == doctest::Approx(a.at(i, j)).epsilon(1e-9));
      }
  }
}

TEST_CASE("factors stay orthonormal on rank-deficient input") {
  // One zero column and a duplicated row force two zero singular values.
  const CsrMatrix m = csr_from_triplets(
      4, 3, {{0, 0, 1.0}, {0, 2, 2.0}, {1, 0, 1.0}, {1, 2, 2.0}, {2, 2, 1.0}});
  const TruncatedSvd f = svd(m, 3, 17);
  CHECK(f.sigma[2] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(max_abs_offdiag_gram(f.u) < 1e-8);
  CHECK(max_abs_offdiag_gram(f.v) < 1e-8);
  DenseMatrix d(4, 3);
  d.data = m.to_dense();
  const SmallSvd s = small_svd(d);
  CHECK(max_abs_offdiag_gram(s.u) < 1e-10);
  CHECK(max_abs_offdiag_gram(s.v) < 1e-10);
}

TEST_CASE("truncated svd singular values match eigen at full rank") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 2 + rng.uniform_int(19);  // <= 20
    const std::size_t cols = 2 + rng.uniform_int(14);  // <= 15
    const CsrMatrix m = random_sparse(rng, rows, cols, 0.6);
    if (m.nnz() == 0) continue;
    const std::size_t q = std::min(rows, cols);
    const TruncatedSvd f = svd(m, q, 1000 + static_cast<std::uint64_t>(trial));
    const Eigen::VectorXd sv =
        Eigen::JacobiSVD<Eigen::MatrixXd>(to_eigen(m)).singularValues();
    REQUIRE(f.sigma.size() == q);
    for (std::size_t i = 0; i < q; ++i)
      CHECK(std::abs(f.sigma[i] - sv(static_cast<Eigen::Index>(i))) < 1e-8);
    CHECK(max_abs_offdiag_gram(f.u) < 1e-8);
    CHECK(max_abs_offdiag_gram(f.v) < 1e-8);
  }
}

TEST_CASE("truncated svd recovers planted low rank exactly") {
  Rng rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t rows = 12, cols = 9, rank = 3;
    DenseMatrix a(rows, rank), b(rank, cols);
    for (double& v : a.data) v = rng.normal();
    for (double& v : b.data) v = rng.normal();
    const DenseMatrix x = matmul(a, b);
    const CsrMatrix m = csr_from_dense(rows, cols, x.data);
    const TruncatedSvd f = svd(m, 5, 77);  // q above the true rank
    const Eigen::VectorXd sv =
        Eigen::JacobiSVD<Eigen::MatrixXd>(to_eigen(m)).singularValues();
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(std::abs(f.sigma[i] - sv(static_cast<Eigen::Index>(i))) < 1e-8);
    CHECK(f.sigma[rank] < 1e-8);  // beyond the planted rank
  }
}

TEST_CASE("svd is deterministic in the seed and fixes signs") {
  Rng rng(33);
  const CsrMatrix m = random_sparse(rng, 10, 7, 0.7);
  const TruncatedSvd a = svd(m, 4, 5);
  const TruncatedSvd b = svd(m, 4, 5);
  CHECK(a.u.data == b.u.data);
  CHECK(a.sigma == b.sigma);
  CHECK(a.v.data == b.v.data);
  const TruncatedSvd c = svd(m, 4, 6);  // another seed, same spectrum
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(a.sigma[i] == doctest::Approx(c.sigma[i]).epsilon(1e-9));
  for (std::size_t j = 0; j < 4; ++j) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.cols; ++i)
      if (std::abs(a.v.at(i, j)) > std::abs(best)) best = a.v.at(i, j);
    CHECK(best > 0.0);  // dominant entry of every V column is positive
  }
}

TEST_CASE("projection reproduces the training scores") {
  Rng rng(34);
  const CsrMatrix m = random_sparse(rng, 9, 6, 0.8);
  const TruncatedSvd f = svd(m, 3, 9);
  const FeatureBlock scores = project(m, f);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(scores.x.at(i, j) ==
            doctest::Approx(f.u.at(i, j) * f.sigma[j]).epsilon(1e-8));
  // The dense overload agrees with the sparse one.
  FeatureBlock dense_block;
  dense_block.x = DenseMatrix(9, 6);
  dense_block.x.data = m.to_dense();
  const FeatureBlock scores2 = project(dense_block, f);
  for (std::size_t i = 0; i < scores.x.data.size(); ++i)
    CHECK(scores2.x.data[i] == doctest::Approx(scores.x.data[i]).epsilon(1e-12));
  CHECK_THROWS_AS(project(random_sparse(rng, 3, 5), f), DimensionError);
}

TEST_CASE("variance explained is monotone and reaches one") {
  Rng rng(35);
  const CsrMatrix m = random_sparse(rng, 12, 8, 0.7);
  double prev = 0.0;
  for (std::size_t q = 1; q <= 8; ++q) {
    const double ve = variance_explained(svd(m, q, 4), m);
    CHECK(ve >= prev - 1e-12);
    CHECK(ve <= 1.0 + 1e-9);
    prev = ve;
  }
  CHECK(prev == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("svd input validation") {
  const CsrMatrix zero = csr_from_triplets(3, 3, {});
  CHECK_THROWS_AS(svd(zero, 2, 1), ZeroMatrix);
  const CsrMatrix m = csr_from_triplets(3, 3, {{0, 0, 1.0}});
  CHECK_THROWS_AS(svd(m, 0, 1), DimensionError);
  CHECK_THROWS_AS(svd(m, 4, 1), DimensionError);
}
