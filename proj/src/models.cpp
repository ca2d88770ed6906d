#include "sparoof/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparoof {

namespace {

AiEstimate make_estimate(Pattern pattern, std::size_t d, double flops, double bytes) {
  AiEstimate e;
  e.pattern = pattern;
  e.d = d;
  e.flops = flops;
  e.bytes = bytes;
  e.ai = flops / bytes;
  return e;
}

void require_positive(std::uint64_t nnz, std::size_t d) {
  if (nnz == 0) throw std::invalid_argument("model requires nnz >= 1");
  if (d == 0) throw std::invalid_argument("model requires d >= 1");
}

}  // namespace

void MachineProfile::validate() const {
  if (!(beta_gbps > 0.0) || !std::isfinite(beta_gbps)) {
    throw std::invalid_argument("beta_gbps must be positive");
  }
  if (!(pi_gflops > 0.0) || !std::isfinite(pi_gflops)) {
    throw std::invalid_argument("pi_gflops must be positive");
  }
  if (!std::isfinite(ridge_point())) throw std::invalid_argument("ridge point is not finite");
  if (!(reuse_factor > 0.0)) throw std::invalid_argument("reuse_factor must be positive");
  if (!(traffic_a_bytes > 0.0)) throw std::invalid_argument("traffic_a_bytes must be positive");
  if (!(hub_fraction > 0.0 && hub_fraction <= 1.0)) {
    throw std::invalid_argument("hub_fraction must lie in (0, 1]");
  }
}

double flop_count(std::uint64_t nnz, std::size_t d) {
  return 2.0 * static_cast<double>(d) * static_cast<double>(nnz);
}

AiEstimate ai_random(std::uint64_t n, std::uint64_t nnz, std::size_t d) {
  require_positive(nnz, d);
  const double dd = static_cast<double>(d);
  const double bytes = (kCsrBytesPerNnz + kValueBytes * dd) * static_cast<double>(nnz) +
                       kValueBytes * static_cast<double>(n) * dd;
  return make_estimate(Pattern::random, d, flop_count(nnz, d), bytes);
}

AiEstimate ai_diagonal(std::uint64_t n, std::uint64_t nnz, std::size_t d) {
  require_positive(nnz, d);
  // One pass over B plus one over C: 16 bytes per (row, column).
  const double bytes = kCsrBytesPerNnz * static_cast<double>(nnz) +
                       2.0 * kValueBytes * static_cast<double>(n) * static_cast<double>(d);
  return make_estimate(Pattern::diagonal, d, flop_count(nnz, d), bytes);
}

double expected_nonempty_columns(double t, double entries, ZMode mode) {
  if (!(t >= 1.0)) throw std::invalid_argument("block dimension must be >= 1");
  if (!(entries >= 0.0)) throw std::invalid_argument("entry count must be >= 0");
  if (entries == 0.0) return 0.0;
  if (mode == ZMode::poisson) return -t * std::expm1(-entries / t);
  if (t == 1.0) return 1.0;
  return -t * std::expm1(entries * std::log1p(-1.0 / t));
}

AiEstimate ai_blocked(std::uint64_t n, std::uint64_t nnz, std::size_t d, double n_blocks, double z,
                      BlockedTraffic traffic) {
  require_positive(nnz, d);
  if (!(n_blocks >= 0.0) || !(z >= 0.0)) throw std::invalid_argument("N and z must be >= 0");
  const double dd = static_cast<double>(d);
  const double traffic_b = traffic.reuse_factor * kValueBytes * dd * n_blocks * z;
  const double bytes = traffic.traffic_a_bytes * static_cast<double>(nnz) + traffic_b +
                       kValueBytes * static_cast<double>(n) * dd;
  return make_estimate(Pattern::blocked, d, flop_count(nnz, d), bytes);
}

double hub_mass_fraction(double alpha, double f) {
  if (!(alpha > 2.0)) {
    throw std::invalid_argument("hub mass diverges for alpha <= 2");
  }
  if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("hub fraction must lie in (0, 1]");
  return std::pow(f, (alpha - 2.0) / (alpha - 1.0));
}

AiEstimate ai_scale_free(std::uint64_t n, std::uint64_t nnz, std::size_t d, double nnz_hub,
                         double n_hub) {
  require_positive(nnz, d);
  const double nz = static_cast<double>(nnz);
  const double nn = static_cast<double>(n);
  if (!(nnz_hub >= 0.0 && nnz_hub <= nz)) throw std::invalid_argument("nnz_hub must lie in [0, nnz]");
  if (!(n_hub >= 0.0 && n_hub <= nn)) throw std::invalid_argument("n_hub must lie in [0, n]");
  const double dd = static_cast<double>(d);
  const double bytes = kCsrBytesPerNnz * nz + kValueBytes * dd * (nz - nnz_hub) +
                       kValueBytes * dd * n_hub + kValueBytes * nn * dd;
  return make_estimate(Pattern::scale_free, d, flop_count(nnz, d), bytes);
}

double roofline_bound(const MachineProfile& p, double ai) {
  if (!(ai >= 0.0)) throw std::invalid_argument("arithmetic intensity must be >= 0");
  return std::min(p.beta_gbps * ai, p.pi_gflops);
}

AiEstimate with_bound(AiEstimate e, const MachineProfile& p) {
  e.bound_gflops = roofline_bound(p, e.ai);
  return e;
}

}  // namespace sparoof
