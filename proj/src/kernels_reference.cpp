// Serial reference SpMM, kept as the equivalence oracle for the parallel
// kernels in kernels_omp.cpp.

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "sparoof/kernels.hpp"

namespace sparoof {

std::string_view to_string(KernelId k) {
  switch (k) {
    case KernelId::csr: return "csr";
    case KernelId::csb: return "csb";
    case KernelId::reference: return "reference";
  }
  return "unknown";
}

KernelId parse_kernel(std::string_view s) {
  if (s == "csr") return KernelId::csr;
  if (s == "csb") return KernelId::csb;
  if (s == "reference") return KernelId::reference;
  throw std::invalid_argument("unknown kernel '" + std::string(s) + "'");
}

void spmm_reference_into(const CsrMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
  if (b.n_rows() != a.n()) throw MatrixError("B must have n rows");
  if (c.n_rows() != a.n() || c.n_cols() != b.n_cols()) throw MatrixError("C must be n x d");
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto vals = a.values();
  const std::size_t d = b.n_cols();
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double sum = 0.0;
      for (index_t k = rp[i]; k < rp[i + 1]; ++k) sum += vals[k] * b(ci[k], j);
      c(i, j) = sum;
    }
  }
}

DenseMatrix spmm_reference(const CsrMatrix& a, const DenseMatrix& b) {
  if (b.n_rows() != a.n()) throw MatrixError("B must have n rows");
  DenseMatrix c(a.n(), b.n_cols());
  spmm_reference_into(a, b, c);
  return c;
}

int resolve_workers(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("SPAROOF_THREADS"); env && *env) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace sparoof
