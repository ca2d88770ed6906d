#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace sparoof {

/// Global row/column index. The traffic model charges 4 bytes per index.
using index_t = std::uint32_t;
/// Index inside a CSB block; limits the block dimension to 2^16.
using local_index_t = std::uint16_t;

inline constexpr std::size_t kMaxBlockDim = std::size_t{1} << 16;

/// Thrown when a matrix violates a structural precondition.
class MatrixError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CooEntry {
  index_t row;
  index_t col;
  double value;
};

/// Unordered triplets, the ingestion form for files and generators.
struct CooEntries {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<CooEntry> entries;

  void add(index_t row, index_t col, double value) { entries.push_back({row, col, value}); }
};

/// Sorts entries row-major and sums duplicate (row, col) pairs in place.
/// Throws MatrixError when an index is out of range.
void canonicalize(CooEntries& coo);

/// Square sparse matrix in compressed-sparse-row layout.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  /// Validates every CSR invariant; throws MatrixError on violation.
  CsrMatrix(std::size_t n, std::vector<index_t> row_ptr, std::vector<index_t> col_idx,
            std::vector<double> values);

  std::size_t n() const { return n_; }
  std::size_t nnz() const { return col_idx_.size(); }

  std::span<const index_t> row_ptr() const { return row_ptr_; }
  std::span<const index_t> col_idx() const { return col_idx_; }
  std::span<const double> values() const { return values_; }

  std::size_t row_nnz(std::size_t i) const { return row_ptr_[i + 1] - row_ptr_[i]; }

  friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<index_t> row_ptr_{0};
  std::vector<index_t> col_idx_;
  std::vector<double> values_;
};

/// Builds a CSR matrix from triplets. Duplicates are summed.
/// Throws MatrixError for non-square input or out-of-range indices.
CsrMatrix csr_from_coo(CooEntries coo);

/// Builds a CSR matrix from (row, col) keys packed as row << 32 | col.
/// Keys may be unsorted and repeated; every stored value is 1.0.
CsrMatrix csr_from_pattern(std::size_t n, std::vector<std::uint64_t> keys);

CooEntries csr_to_coo(const CsrMatrix& a);

struct CsbBlock {
  index_t block_row;
  index_t block_col;
  std::uint32_t count;   // entries in this block, always >= 1
  std::uint32_t offset;  // first entry in the per-entry arrays
};

/// Compressed sparse blocks: the matrix cut into t x t tiles, only nonempty
/// tiles stored. Blocks are block-row-major and, inside a block, entries are
/// ordered by (local row, local col).
class CsbMatrix {
 public:
  std::size_t n() const { return n_; }
  std::size_t t() const { return t_; }
  std::size_t nnz() const { return values_.size(); }
  std::size_t n_block_rows() const { return block_ptr_.size() - 1; }
  /// N, the count of nonzero blocks.
  std::size_t n_blocks() const { return blocks_.size(); }

  std::span<const std::uint32_t> block_ptr() const { return block_ptr_; }
  std::span<const CsbBlock> blocks() const { return blocks_; }
  std::span<const CsbBlock> block_row(std::size_t br) const {
    return std::span<const CsbBlock>(blocks_).subspan(block_ptr_[br],
                                                      block_ptr_[br + 1] - block_ptr_[br]);
  }
  std::span<const local_index_t> local_rows() const { return local_rows_; }
  std::span<const local_index_t> local_cols() const { return local_cols_; }
  std::span<const double> values() const { return values_; }

 private:
  friend CsbMatrix csr_to_csb(const CsrMatrix& a, std::size_t t);

  std::size_t n_ = 0;
  std::size_t t_ = 1;
  std::vector<std::uint32_t> block_ptr_{0};
  std::vector<CsbBlock> blocks_;
  std::vector<local_index_t> local_rows_;
  std::vector<local_index_t> local_cols_;
  std::vector<double> values_;
};

/// t must be a power of two no larger than 2^16.
CsbMatrix csr_to_csb(const CsrMatrix& a, std::size_t t);
CsrMatrix csb_to_csr(const CsbMatrix& a);

/// 2^ceil(log2 sqrt(n)) clamped to [32, 2^15].
std::size_t default_block_dim(std::size_t n);

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t n_rows, std::size_t n_cols, double fill = 0.0)
      : n_rows_(n_rows), n_cols_(n_cols), data_(n_rows * n_cols, fill) {}
  DenseMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<double> data);

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return n_cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_cols_ + j]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * n_cols_, n_cols_);
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<double> data_;
};

/// Uniform values in [0, 1) from a seeded stream; identical across platforms.
DenseMatrix random_dense(std::size_t n_rows, std::size_t n_cols, std::uint64_t seed);

}  // namespace sparoof
