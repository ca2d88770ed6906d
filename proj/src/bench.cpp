#include "sparoof/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <new>

#include "sparoof/models.hpp"

namespace sparoof {

namespace {

using Clock = std::chrono::steady_clock;

void run_kernel(KernelId kernel, const BenchOperand& a, const DenseMatrix& b, DenseMatrix& c,
                int threads) {
  switch (kernel) {
    case KernelId::csr: spmm_csr_into(a.csr(), b, c, threads); break;
    case KernelId::csb: spmm_csb_into(a.csb(), b, c, threads); break;
    case KernelId::reference: spmm_reference_into(a.csr(), b, c); break;
  }
}

Validation validate_output(KernelId kernel, const BenchOperand& a, const DenseMatrix& b,
                           const DenseMatrix& c, const BenchConfig& cfg) {
  if (a.csr().n() <= cfg.validate_max_n) {
    const DenseMatrix ref = spmm_reference(a.csr(), b);
    const auto got = c.data();
    const auto want = ref.data();
    for (std::size_t i = 0; i < want.size(); ++i) {
      const bool ok = kernel == KernelId::csb
                          ? std::abs(got[i] - want[i]) <= 1e-10 * (1.0 + std::abs(want[i]))
                          : got[i] == want[i];
      if (!ok) {
        throw ValidationError(std::string(to_string(kernel)) + " output disagrees with reference on " +
                              a.id() + " at element " + std::to_string(i));
      }
    }
    return Validation::reference;
  }
  if (is_identity(a.csr())) {
    if (!(c == b)) {
      throw ValidationError(std::string(to_string(kernel)) + " output differs from B for identity " +
                            a.id());
    }
    return Validation::identity;
  }
  return Validation::skipped;
}

std::size_t read_sysfs_size(const char* path) {
  std::ifstream in(path);
  std::string s;
  if (!(in >> s) || s.empty()) return 0;
  std::size_t mult = 1;
  if (s.back() == 'K') mult = 1024;
  if (s.back() == 'M') mult = 1024 * 1024;
  if (mult != 1) s.pop_back();
  try {
    return static_cast<std::size_t>(std::stoull(s)) * mult;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

void BenchConfig::validate() const {
  if (warmup_runs < 1) throw std::invalid_argument("warmup_runs must be >= 1");
  if (timed_runs < 3) throw std::invalid_argument("timed_runs must be >= 3");
  if (d_values.empty()) throw std::invalid_argument("d_values must not be empty");
  for (const auto d : d_values) {
    if (d == 0) throw std::invalid_argument("d must be >= 1");
  }
  for (const int t : thread_counts) {
    if (t < 1) throw std::invalid_argument("thread counts must be >= 1");
  }
}

const char* to_string(Validation v) {
  switch (v) {
    case Validation::reference: return "reference";
    case Validation::identity: return "identity";
    case Validation::skipped: return "skipped";
  }
  return "unknown";
}

BenchOperand::BenchOperand(std::string id, CsrMatrix a, std::size_t block_dim)
    : id_(std::move(id)),
      csr_(std::move(a)),
      csb_(csr_to_csb(csr_, block_dim == 0 ? default_block_dim(csr_.n()) : block_dim)) {}

double gflops(std::uint64_t nnz, std::size_t d, double seconds) {
  if (!(seconds > 0.0)) throw std::invalid_argument("seconds must be positive");
  return flop_count(nnz, d) / seconds / 1e9;
}

double median(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("median of no samples");
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  if (samples.size() % 2 == 1) return samples[mid];
  return 0.5 * (samples[mid - 1] + samples[mid]);
}

bool is_identity(const CsrMatrix& a) {
  if (a.nnz() != a.n()) return false;
  const auto ci = a.col_idx();
  const auto vals = a.values();
  for (std::size_t i = 0; i < a.n(); ++i) {
    if (a.row_nnz(i) != 1 || ci[a.row_ptr()[i]] != i || vals[a.row_ptr()[i]] != 1.0) return false;
  }
  return true;
}

BenchResult time_spmm(KernelId kernel, const BenchOperand& a, std::size_t d, int threads,
                      const BenchConfig& cfg) {
  cfg.validate();
  if (d == 0) throw std::invalid_argument("d must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  const std::size_t n = a.csr().n();
  const DenseMatrix b = random_dense(n, d, cfg.seed);
  DenseMatrix c(n, d);

  BenchResult r;
  r.kernel = kernel;
  r.matrix_id = a.id();
  r.n = n;
  r.nnz = a.csr().nnz();
  r.d = d;
  r.threads = kernel == KernelId::reference ? 1 : threads;

  for (int w = 0; w < cfg.warmup_runs; ++w) {
    run_kernel(kernel, a, b, c, r.threads);
    if (w == 0) r.validation = validate_output(kernel, a, b, c, cfg);
  }
  r.run_seconds.reserve(static_cast<std::size_t>(cfg.timed_runs));
  for (int run = 0; run < cfg.timed_runs; ++run) {
    const auto t0 = Clock::now();
    run_kernel(kernel, a, b, c, r.threads);
    const auto t1 = Clock::now();
    r.run_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  r.median_seconds = median(r.run_seconds);
  // A clock too coarse for the kernel reports zero; clamp to one tick.
  if (!(r.median_seconds > 0.0)) {
    r.median_seconds = std::chrono::duration<double>(Clock::duration(1)).count();
  }
  r.gflops = gflops(r.nnz, d, r.median_seconds);
  return r;
}

double triad_bandwidth_gbps(std::size_t elements, double seconds) {
  if (!(seconds > 0.0)) throw std::invalid_argument("seconds must be positive");
  return kTriadBytesPerElement * static_cast<double>(elements) / seconds / 1e9;
}

std::size_t last_level_cache_bytes() {
  std::size_t best = 0;
  for (int idx = 0; idx < 8; ++idx) {
    const std::string path = "/sys/devices/system/cpu/cpu0/cache/index" + std::to_string(idx) + "/size";
    best = std::max(best, read_sysfs_size(path.c_str()));
  }
#ifdef _SC_LEVEL3_CACHE_SIZE
  if (best == 0) {
    const long l3 = sysconf(_SC_LEVEL3_CACHE_SIZE);
    if (l3 > 0) best = static_cast<std::size_t>(l3);
  }
#endif
  return best > 0 ? best : std::size_t{32} << 20;
}

TriadResult stream_triad(std::size_t elements, int repetitions, int workers, std::size_t llc_bytes) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (static_cast<double>(elements) * kTriadBytesPerElement < 4.0 * static_cast<double>(llc_bytes)) {
    throw std::invalid_argument("triad arrays (" + std::to_string(elements) +
                                " elements) must total at least 4x the last-level cache (" +
                                std::to_string(llc_bytes) + " bytes)");
  }
  std::unique_ptr<double[]> a, b, c;
  try {
    a.reset(new double[elements]);
    b.reset(new double[elements]);
    c.reset(new double[elements]);
  } catch (const std::bad_alloc&) {
    throw std::runtime_error("cannot allocate triad arrays of " + std::to_string(elements) +
                             " elements");
  }
  const auto n = static_cast<std::int64_t>(elements);
  double* pa = a.get();
  double* pb = b.get();
  double* pc = c.get();

  // First touch with the same static partition the timed loop uses.
#pragma omp parallel for num_threads(workers) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    pa[i] = 0.0;
    pb[i] = 1.0;
    pc[i] = 2.0;
  }

  TriadResult r;
  r.elements = elements;
  r.workers = workers;
  for (int rep = 0; rep < repetitions; ++rep) {
    const auto t0 = Clock::now();
#pragma omp parallel for num_threads(workers) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) pa[i] = pb[i] + kTriadScalar * pc[i];
    const auto t1 = Clock::now();
    r.rep_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  if (pa[0] != pb[0] + kTriadScalar * pc[0]) throw std::runtime_error("triad produced wrong values");
  const double best = *std::min_element(r.rep_seconds.begin(), r.rep_seconds.end());
  r.best_gbps = triad_bandwidth_gbps(elements, best);
  return r;
}

}  // namespace sparoof
