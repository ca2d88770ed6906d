#include "sparoof/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sparoof/random.hpp"

namespace sparoof {

namespace {

void check_index_capacity(std::size_t n, std::size_t nnz) {
  if (n > std::numeric_limits<index_t>::max() || nnz > std::numeric_limits<index_t>::max()) {
    throw MatrixError("matrix exceeds 32-bit index capacity");
  }
}

}  // namespace

void canonicalize(CooEntries& coo) {
  for (const auto& e : coo.entries) {
    if (e.row >= coo.n_rows || e.col >= coo.n_cols) {
      throw MatrixError("entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                        ") outside " + std::to_string(coo.n_rows) + " x " +
                        std::to_string(coo.n_cols));
    }
  }
  auto& v = coo.entries;
  std::stable_sort(v.begin(), v.end(), [](const CooEntry& a, const CooEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (out > 0 && v[out - 1].row == v[i].row && v[out - 1].col == v[i].col) {
      v[out - 1].value += v[i].value;
    } else {
      v[out++] = v[i];
    }
  }
  v.resize(out);
}

CsrMatrix::CsrMatrix(std::size_t n, std::vector<index_t> row_ptr, std::vector<index_t> col_idx,
                     std::vector<double> values)
    : n_(n), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)), values_(std::move(values)) {
  check_index_capacity(n_, col_idx_.size());
  if (row_ptr_.size() != n_ + 1) throw MatrixError("row_ptr must have n + 1 entries");
  if (values_.size() != col_idx_.size()) throw MatrixError("col_idx and values differ in length");
  if (row_ptr_.front() != 0) throw MatrixError("row_ptr[0] must be 0");
  if (row_ptr_.back() != col_idx_.size()) throw MatrixError("row_ptr[n] must equal nnz");
  for (std::size_t i = 0; i < n_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1]) throw MatrixError("row_ptr must be nondecreasing");
    for (index_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= n_) throw MatrixError("column index out of range");
      if (k > row_ptr_[i] && col_idx_[k - 1] >= col_idx_[k]) {
        throw MatrixError("column indices must be strictly increasing within a row");
      }
    }
  }
}

CsrMatrix csr_from_coo(CooEntries coo) {
  if (coo.n_rows != coo.n_cols) {
    throw MatrixError("sparse operand must be square, got " + std::to_string(coo.n_rows) + " x " +
                      std::to_string(coo.n_cols));
  }
  canonicalize(coo);
  const std::size_t n = coo.n_rows;
  check_index_capacity(n, coo.entries.size());
  std::vector<index_t> row_ptr(n + 1, 0);
  std::vector<index_t> col_idx(coo.entries.size());
  std::vector<double> values(coo.entries.size());
  for (std::size_t k = 0; k < coo.entries.size(); ++k) {
    const auto& e = coo.entries[k];
    ++row_ptr[e.row + 1];
    col_idx[k] = e.col;
    values[k] = e.value;
  }
  std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
  return CsrMatrix(n, std::move(row_ptr), std::move(col_idx), std::move(values));
}

CsrMatrix csr_from_pattern(std::size_t n, std::vector<std::uint64_t> keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  check_index_capacity(n, keys.size());
  std::vector<index_t> row_ptr(n + 1, 0);
  std::vector<index_t> col_idx(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const auto row = static_cast<std::size_t>(keys[k] >> 32);
    const auto col = static_cast<index_t>(keys[k] & 0xffffffffu);
    if (row >= n || col >= n) throw MatrixError("pattern key out of range");
    ++row_ptr[row + 1];
    col_idx[k] = col;
  }
  std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
  std::vector<double> values(keys.size(), 1.0);
  return CsrMatrix(n, std::move(row_ptr), std::move(col_idx), std::move(values));
}

CooEntries csr_to_coo(const CsrMatrix& a) {
  CooEntries coo{a.n(), a.n(), {}};
  coo.entries.reserve(a.nnz());
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto vals = a.values();
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (index_t k = rp[i]; k < rp[i + 1]; ++k) {
      coo.add(static_cast<index_t>(i), ci[k], vals[k]);
    }
  }
  return coo;
}

CsbMatrix csr_to_csb(const CsrMatrix& a, std::size_t t) {
  if (t == 0 || !std::has_single_bit(t)) {
    throw MatrixError("block dimension must be a power of two, got " + std::to_string(t));
  }
  if (t > kMaxBlockDim) {
    throw MatrixError("block dimension " + std::to_string(t) + " overflows 16-bit local indices");
  }
  CsbMatrix out;
  out.n_ = a.n();
  out.t_ = t;
  const std::size_t shift = static_cast<std::size_t>(std::countr_zero(t));
  const std::size_t n_block_rows = (a.n() + t - 1) / t;
  out.block_ptr_.assign(n_block_rows + 1, 0);
  out.local_rows_.reserve(a.nnz());
  out.local_cols_.reserve(a.nnz());
  out.values_.reserve(a.nnz());

  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto vals = a.values();

  // CSR order is (row, col), so a stable sort of one block row's entries on
  // block column yields (block col, local row, local col).
  std::vector<index_t> order;
  std::vector<local_index_t> local_row_of;
  for (std::size_t br = 0; br < n_block_rows; ++br) {
    const std::size_t r0 = br * t;
    const std::size_t r1 = std::min(a.n(), r0 + t);
    const index_t base = rp[r0];
    order.resize(rp[r1] - base);
    local_row_of.resize(order.size());
    for (std::size_t r = r0; r < r1; ++r) {
      for (index_t k = rp[r]; k < rp[r + 1]; ++k) {
        local_row_of[k - base] = static_cast<local_index_t>(r - r0);
      }
    }
    std::iota(order.begin(), order.end(), base);
    std::stable_sort(order.begin(), order.end(),
                     [&](index_t x, index_t y) { return (ci[x] >> shift) < (ci[y] >> shift); });
    for (const index_t k : order) {
      const auto bc = static_cast<index_t>(ci[k] >> shift);
      if (out.blocks_.empty() || out.blocks_.back().block_row != br ||
          out.blocks_.back().block_col != bc) {
        out.blocks_.push_back({static_cast<index_t>(br), bc, 0,
                               static_cast<std::uint32_t>(out.values_.size())});
      }
      ++out.blocks_.back().count;
      out.local_rows_.push_back(local_row_of[k - base]);
      out.local_cols_.push_back(static_cast<local_index_t>(ci[k] & (t - 1)));
      out.values_.push_back(vals[k]);
    }
    out.block_ptr_[br + 1] = static_cast<std::uint32_t>(out.blocks_.size());
  }
  return out;
}

CsrMatrix csb_to_csr(const CsbMatrix& a) {
  CooEntries coo{a.n(), a.n(), {}};
  coo.entries.reserve(a.nnz());
  const auto lr = a.local_rows();
  const auto lc = a.local_cols();
  const auto vals = a.values();
  for (const auto& blk : a.blocks()) {
    for (std::uint32_t k = blk.offset; k < blk.offset + blk.count; ++k) {
      coo.add(static_cast<index_t>(blk.block_row * a.t() + lr[k]),
              static_cast<index_t>(blk.block_col * a.t() + lc[k]), vals[k]);
    }
  }
  return csr_from_coo(std::move(coo));
}

std::size_t default_block_dim(std::size_t n) {
  const double root = std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)));
  std::size_t t = std::bit_ceil(static_cast<std::size_t>(std::ceil(root)));
  return std::clamp<std::size_t>(t, 32, std::size_t{1} << 15);
}

DenseMatrix::DenseMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<double> data)
    : n_rows_(n_rows), n_cols_(n_cols), data_(std::move(data)) {
  if (data_.size() != n_rows_ * n_cols_) {
    throw MatrixError("dense data length must equal n_rows * n_cols");
  }
}

DenseMatrix random_dense(std::size_t n_rows, std::size_t n_cols, std::uint64_t seed) {
  DenseMatrix m(n_rows, n_cols);
  Rng rng(seed);
  for (double& x : m.data()) x = uniform01(rng);
  return m;
}

}  // namespace sparoof
