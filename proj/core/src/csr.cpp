#include "ideolab/csr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ideolab/errors.hpp"

namespace ideolab {

double CsrMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows || c >= cols) throw DimensionError("CsrMatrix::at out of range");
  const auto cs = row_cols(r);
  const auto it = std::lower_bound(cs.begin(), cs.end(), static_cast<std::uint32_t>(c));
  if (it == cs.end() || *it != c) return 0.0;
  return values[row_ptr[r] + static_cast<std::size_t>(it - cs.begin())];
}

bool CsrMatrix::structurally_equal(const CsrMatrix& other) const {
  return rows == other.rows && cols == other.cols && row_ptr == other.row_ptr &&
         col_idx == other.col_idx && values == other.values;
}

std::vector<double> CsrMatrix::row_sums() const {
  std::vector<double> s(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s[r] += values[k];
  return s;
}

std::vector<double> CsrMatrix::col_sums() const {
  std::vector<double> s(cols, 0.0);
  for (std::size_t k = 0; k < values.size(); ++k) s[col_idx[k]] += values[k];
  return s;
}

std::vector<std::size_t> CsrMatrix::row_nnz() const {
  std::vector<std::size_t> s(rows, 0);
  for (std::size_t r = 0; r < rows; ++r) s[r] = row_ptr[r + 1] - row_ptr[r];
  return s;
}

std::vector<std::size_t> CsrMatrix::col_nnz() const {
  std::vector<std::size_t> s(cols, 0);
  for (const auto c : col_idx) ++s[c];
  return s;
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
  if (x.size() != cols) throw DimensionError("multiply: vector length != cols");
  std::vector<double> y(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = 0.0;
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      acc += values[k] * x[col_idx[k]];
    y[r] = acc;
  }
  return y;
}

std::vector<double> CsrMatrix::multiply_transposed(std::span<const double> x) const {
  if (x.size() != rows) throw DimensionError("multiply_transposed: vector length != rows");
  std::vector<double> y(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double xr = x[r];
    if (xr == 0.0) continue;
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      y[col_idx[k]] += values[k] * xr;
  }
  return y;
}

double CsrMatrix::frobenius_norm_squared() const {
  double s = 0.0;
  for (const double v : values) s += v * v;
  return s;
}

CsrMatrix CsrMatrix::select_rows(std::span<const std::size_t> keep) const {
  CsrMatrix out;
  out.rows = keep.size();
  out.cols = cols;
  out.row_ptr.assign(1, 0);
  out.row_ptr.reserve(keep.size() + 1);
  for (const std::size_t r : keep) {
    if (r >= rows) throw DimensionError("select_rows: index out of range");
    out.col_idx.insert(out.col_idx.end(), col_idx.begin() + static_cast<std::ptrdiff_t>(row_ptr[r]),
                       col_idx.begin() + static_cast<std::ptrdiff_t>(row_ptr[r + 1]));
    out.values.insert(out.values.end(), values.begin() + static_cast<std::ptrdiff_t>(row_ptr[r]),
                      values.begin() + static_cast<std::ptrdiff_t>(row_ptr[r + 1]));
    out.row_ptr.push_back(out.col_idx.size());
  }
  return out;
}

CsrMatrix CsrMatrix::select_cols(std::span<const std::size_t> keep) const {
  constexpr std::uint32_t kDropped = ~std::uint32_t{0};
  std::vector<std::uint32_t> remap(cols, kDropped);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= cols) throw DimensionError("select_cols: index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw DimensionError("select_cols: indices must be strictly increasing");
    remap[keep[i]] = static_cast<std::uint32_t>(i);
  }
  CsrMatrix out;
  out.rows = rows;
  out.cols = keep.size();
  out.row_ptr.assign(1, 0);
  out.row_ptr.reserve(rows + 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const std::uint32_t nc = remap[col_idx[k]];
      if (nc == kDropped) continue;
      out.col_idx.push_back(nc);
      out.values.push_back(values[k]);
    }
    out.row_ptr.push_back(out.col_idx.size());
  }
  return out;
}

CsrMatrix CsrMatrix::binarized() const {
  CsrMatrix out = *this;
  std::fill(out.values.begin(), out.values.end(), 1.0);
  return out;
}

void CsrMatrix::normalize_rows_l2() {
  for (std::size_t r = 0; r < rows; ++r) {
    double ss = 0.0;
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) ss += values[k] * values[k];
    if (ss == 0.0) continue;
    const double inv = 1.0 / std::sqrt(ss);
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) values[k] *= inv;
  }
}

std::vector<double> CsrMatrix::to_dense() const {
  std::vector<double> d(rows * cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      d[r * cols + col_idx[k]] = values[k];
  return d;
}

CsrMatrix csr_from_triplets(std::size_t rows, std::size_t cols,
                            std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row >= rows || t.col >= cols)
      throw DimensionError("csr_from_triplets: entry (" + std::to_string(t.row) + ", " +
                           std::to_string(t.col) + ") outside " + std::to_string(rows) + "x" +
                           std::to_string(cols));
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix out;
  out.rows = rows;
  out.cols = cols;
  out.row_ptr.assign(rows + 1, 0);
  std::size_t i = 0;
  while (i < triplets.size()) {
    const std::size_t r = triplets[i].row;
    const std::size_t c = triplets[i].col;
    double acc = 0.0;
    while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c)
      acc += triplets[i++].value;
    if (acc == 0.0) continue;
    out.col_idx.push_back(static_cast<std::uint32_t>(c));
    out.values.push_back(acc);
    ++out.row_ptr[r + 1];
  }
  for (std::size_t r = 0; r < rows; ++r) out.row_ptr[r + 1] += out.row_ptr[r];
  return out;
}

CsrMatrix csr_from_dense(std::size_t rows, std::size_t cols,
                         std::span<const double> dense) {
  if (dense.size() != rows * cols)
    throw DimensionError("csr_from_dense: buffer size mismatch");
  CsrMatrix out;
  out.rows = rows;
  out.cols = cols;
  out.row_ptr.assign(1, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = dense[r * cols + c];
      if (v == 0.0) continue;
      out.col_idx.push_back(static_cast<std::uint32_t>(c));
      out.values.push_back(v);
    }
    out.row_ptr.push_back(out.col_idx.size());
  }
  return out;
}

}  // namespace ideolab
