// OpenMP SpMM kernels. Every output row is produced by exactly one worker,
// with contributions added in the same order as spmm_reference, so results
// do not depend on the worker count or the schedule.

#include <algorithm>
#include <cstdint>

#include "sparoof/kernels.hpp"

namespace sparoof {

namespace {

constexpr std::int64_t kRowChunk = 256;

void check_shapes(std::size_t n, const DenseMatrix& b, const DenseMatrix& c, int workers) {
  if (b.n_rows() != n) throw MatrixError("B must have n rows");
  if (c.n_rows() != n || c.n_cols() != b.n_cols()) throw MatrixError("C must be n x d");
  if (workers < 1) throw MatrixError("worker count must be at least 1");
}

// d known at compile time: the whole output row lives in the accumulator.
template <std::size_t W>
void csr_fixed_width(const CsrMatrix& a, const double* b, double* c, int workers) {
  const index_t* rp = a.row_ptr().data();
  const index_t* ci = a.col_idx().data();
  const double* vals = a.values().data();
  const auto n = static_cast<std::int64_t>(a.n());

#pragma omp parallel for num_threads(workers) schedule(dynamic, kRowChunk)
  for (std::int64_t i = 0; i < n; ++i) {
    double acc[W] = {};
    for (index_t k = rp[i]; k < rp[i + 1]; ++k) {
      const double v = vals[k];
      const double* brow = b + static_cast<std::size_t>(ci[k]) * W;
#pragma omp simd
      for (std::size_t j = 0; j < W; ++j) acc[j] += v * brow[j];
    }
    double* crow = c + static_cast<std::size_t>(i) * W;
    for (std::size_t j = 0; j < W; ++j) crow[j] = acc[j];
  }
}

void csr_tiled(const CsrMatrix& a, const double* b, double* c, std::size_t d, int workers) {
  const index_t* rp = a.row_ptr().data();
  const index_t* ci = a.col_idx().data();
  const double* vals = a.values().data();
  const auto n = static_cast<std::int64_t>(a.n());

#pragma omp parallel for num_threads(workers) schedule(dynamic, kRowChunk)
  for (std::int64_t i = 0; i < n; ++i) {
    double* crow = c + static_cast<std::size_t>(i) * d;
    for (std::size_t j0 = 0; j0 < d; j0 += kAccumulatorTile) {
      const std::size_t w = std::min(kAccumulatorTile, d - j0);
      double acc[kAccumulatorTile] = {};
      for (index_t k = rp[i]; k < rp[i + 1]; ++k) {
        const double v = vals[k];
        const double* brow = b + static_cast<std::size_t>(ci[k]) * d + j0;
#pragma omp simd
        for (std::size_t j = 0; j < w; ++j) acc[j] += v * brow[j];
      }
      for (std::size_t j = 0; j < w; ++j) crow[j0 + j] = acc[j];
    }
  }
}

template <std::size_t W>
void csb_block_row(const CsbMatrix& a, std::size_t br, const double* b, double* c, std::size_t d) {
  const std::size_t width = W == 0 ? d : W;
  const std::size_t t = a.t();
  const std::size_t r0 = br * t;
  const std::size_t r1 = std::min(a.n(), r0 + t);
  std::fill(c + r0 * width, c + r1 * width, 0.0);

  const local_index_t* lr = a.local_rows().data();
  const local_index_t* lc = a.local_cols().data();
  const double* vals = a.values().data();
  for (const CsbBlock& blk : a.block_row(br)) {
    double* cblock = c + r0 * width;
    const double* bblock = b + static_cast<std::size_t>(blk.block_col) * t * width;
    const std::uint32_t end = blk.offset + blk.count;
    for (std::uint32_t k = blk.offset; k < end; ++k) {
      const double v = vals[k];
      double* crow = cblock + static_cast<std::size_t>(lr[k]) * width;
      const double* brow = bblock + static_cast<std::size_t>(lc[k]) * width;
#pragma omp simd
      for (std::size_t j = 0; j < width; ++j) crow[j] += v * brow[j];
    }
  }
}

template <std::size_t W>
void csb_all(const CsbMatrix& a, const double* b, double* c, std::size_t d, int workers) {
  const auto n_br = static_cast<std::int64_t>(a.n_block_rows());
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (std::int64_t br = 0; br < n_br; ++br) {
    csb_block_row<W>(a, static_cast<std::size_t>(br), b, c, d);
  }
}

}  // namespace

void spmm_csr_into(const CsrMatrix& a, const DenseMatrix& b, DenseMatrix& c, int workers) {
  check_shapes(a.n(), b, c, workers);
  const double* bp = b.data().data();
  double* cp = c.data().data();
  switch (b.n_cols()) {
    case 0: return;
    case 1: csr_fixed_width<1>(a, bp, cp, workers); break;
    case 4: csr_fixed_width<4>(a, bp, cp, workers); break;
    case 16: csr_fixed_width<16>(a, bp, cp, workers); break;
    case 64: csr_fixed_width<64>(a, bp, cp, workers); break;
    default: csr_tiled(a, bp, cp, b.n_cols(), workers); break;
  }
}

void spmm_csb_into(const CsbMatrix& a, const DenseMatrix& b, DenseMatrix& c, int workers) {
  check_shapes(a.n(), b, c, workers);
  const double* bp = b.data().data();
  double* cp = c.data().data();
  const std::size_t d = b.n_cols();
  switch (d) {
    case 0: return;
    case 1: csb_all<1>(a, bp, cp, d, workers); break;
    case 4: csb_all<4>(a, bp, cp, d, workers); break;
    case 16: csb_all<16>(a, bp, cp, d, workers); break;
    case 64: csb_all<64>(a, bp, cp, d, workers); break;
    default: csb_all<0>(a, bp, cp, d, workers); break;
  }
}

DenseMatrix spmm_csr(const CsrMatrix& a, const DenseMatrix& b, int workers) {
  if (b.n_rows() != a.n()) throw MatrixError("B must have n rows");
  DenseMatrix c(a.n(), b.n_cols());
  spmm_csr_into(a, b, c, workers);
  return c;
}

DenseMatrix spmm_csb(const CsbMatrix& a, const DenseMatrix& b, int workers) {
  if (b.n_rows() != a.n()) throw MatrixError("B must have n rows");
  DenseMatrix c(a.n(), b.n_cols());
  spmm_csb_into(a, b, c, workers);
  return c;
}

}  // namespace sparoof
