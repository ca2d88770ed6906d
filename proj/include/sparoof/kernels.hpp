#pragma once

#include <string_view>

#include "sparoof/matrix.hpp"

namespace sparoof {

enum class KernelId { csr, csb, reference };

std::string_view to_string(KernelId k);
/// Throws std::invalid_argument for unknown names.
KernelId parse_kernel(std::string_view s);

/// Width of the per-row accumulator tile in the CSR kernel.
inline constexpr std::size_t kAccumulatorTile = 64;

/// Serial oracle: C[i][j] = sum_k A[i][k] * B[k][j], accumulated in
/// column-index order. Throws MatrixError on dimension mismatch.
DenseMatrix spmm_reference(const CsrMatrix& a, const DenseMatrix& b);

/// OpenMP row-parallel CSR SpMM. Each output row is written by one worker
/// in column-index order, so the result is bit-identical to
/// spmm_reference for any worker count.
DenseMatrix spmm_csr(const CsrMatrix& a, const DenseMatrix& b, int workers);

/// OpenMP block-row-parallel CSB SpMM. A block row is owned by one worker,
/// which walks its blocks left to right and their entries in stored order.
DenseMatrix spmm_csb(const CsbMatrix& a, const DenseMatrix& b, int workers);

// Variants writing into a preallocated C of shape n x d, for timing.
void spmm_reference_into(const CsrMatrix& a, const DenseMatrix& b, DenseMatrix& c);
void spmm_csr_into(const CsrMatrix& a, const DenseMatrix& b, DenseMatrix& c, int workers);
void spmm_csb_into(const CsbMatrix& a, const DenseMatrix& b, DenseMatrix& c, int workers);

/// --threads flag value if positive, else $SPAROOF_THREADS, else the
/// hardware concurrency.
int resolve_workers(int flag_value = 0);

}  // namespace sparoof
