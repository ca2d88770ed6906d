#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparoof/kernels.hpp"
#include "sparoof/matrix.hpp"

namespace sparoof {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BenchConfig {
  int warmup_runs = 3;
  int timed_runs = 7;
  std::vector<std::size_t> d_values{1, 4, 16, 64};
  std::vector<int> thread_counts;  // empty: resolve_workers()
  std::uint64_t seed = 42;
  /// Warmup output is checked against spmm_reference up to this n.
  std::size_t validate_max_n = 10000;

  /// Throws std::invalid_argument unless warmup_runs >= 1, timed_runs >= 3.
  void validate() const;
};

enum class Validation { reference, identity, skipped };
const char* to_string(Validation v);

struct BenchResult {
  KernelId kernel = KernelId::csr;
  std::string matrix_id;
  std::uint64_t n = 0;
  std::uint64_t nnz = 0;
  std::size_t d = 1;
  int threads = 1;
  double median_seconds = 0.0;
  double gflops = 0.0;
  std::vector<double> run_seconds;
  Validation validation = Validation::skipped;
};

/// A matrix prepared for timing in both storage formats.
class BenchOperand {
 public:
  /// block_dim 0 selects default_block_dim(n).
  BenchOperand(std::string id, CsrMatrix a, std::size_t block_dim = 0);

  const std::string& id() const { return id_; }
  const CsrMatrix& csr() const { return csr_; }
  const CsbMatrix& csb() const { return csb_; }

 private:
  std::string id_;
  CsrMatrix csr_;
  CsbMatrix csb_;
};

/// 2 * d * nnz / seconds / 1e9.
double gflops(std::uint64_t nnz, std::size_t d, double seconds);

/// Median of the samples; mean of the middle pair for even counts.
double median(std::vector<double> samples);

/// Times the multiply alone: B (uniform [0,1) from cfg.seed) and C are
/// allocated and touched first. The first warmup output is validated;
/// throws ValidationError when it disagrees with the oracle.
BenchResult time_spmm(KernelId kernel, const BenchOperand& a, std::size_t d, int threads,
                      const BenchConfig& cfg);

/// True for the n x n identity: one entry per row, on the diagonal, equal to 1.
bool is_identity(const CsrMatrix& a);

inline constexpr double kTriadScalar = 3.0;
inline constexpr double kTriadBytesPerElement = 24.0;

struct TriadResult {
  std::size_t elements = 0;
  int workers = 1;
  double best_gbps = 0.0;
  std::vector<double> rep_seconds;
};

/// STREAM byte accounting: 24 bytes per element per repetition.
double triad_bandwidth_gbps(std::size_t elements, double seconds);

/// Last-level cache size from sysfs or sysconf; 32 MiB when unknown.
std::size_t last_level_cache_bytes();

/// a[i] = b[i] + 3 c[i] over three arrays of `elements` doubles. Returns the
/// best repetition. The arrays must total at least 4x the last-level cache.
TriadResult stream_triad(std::size_t elements, int repetitions, int workers,
                         std::size_t llc_bytes = last_level_cache_bytes());

}  // namespace sparoof
