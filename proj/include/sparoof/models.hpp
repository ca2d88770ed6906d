#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "sparoof/generators.hpp"

namespace sparoof {

/// Bytes per stored value and per 32-bit index in the traffic model.
inline constexpr double kValueBytes = 8.0;
inline constexpr double kIndexBytes = 4.0;
/// CSR A-operand traffic per nonzero: value plus column index.
inline constexpr double kCsrBytesPerNnz = kValueBytes + kIndexBytes;

/// Blocked-model A traffic per nonzero as the closed-form blocked AI prints it.
inline constexpr double kBlockedTrafficABytes = 8.0;
/// Fraction of modeled blocked B traffic that reaches main memory.
inline constexpr double kDefaultReuseFactor = 0.25;
inline constexpr double kDefaultHubFraction = 0.001;

/// Host roofline parameters: bandwidth in GB/s, compute in GFLOP/s.
struct MachineProfile {
  double beta_gbps = 122.6;
  double pi_gflops = 2508.8;
  double reuse_factor = kDefaultReuseFactor;
  double traffic_a_bytes = kBlockedTrafficABytes;
  double hub_fraction = kDefaultHubFraction;

  /// Throws std::invalid_argument unless beta, pi > 0 and the ridge point
  /// is finite.
  void validate() const;
  double ridge_point() const { return pi_gflops / beta_gbps; }
};

struct AiEstimate {
  Pattern pattern = Pattern::random;
  std::size_t d = 1;
  double flops = 0.0;
  double bytes = 0.0;
  double ai = 0.0;  // always flops / bytes
  std::optional<double> bound_gflops;
};

/// 2 * d * nnz: one multiply and one add per nonzero per dense column.
double flop_count(std::uint64_t nnz, std::size_t d);

/// No reuse of B rows: every nonzero loads a row of B.
AiEstimate ai_random(std::uint64_t n, std::uint64_t nnz, std::size_t d);

/// B is streamed once; A read once, C written once.
AiEstimate ai_diagonal(std::uint64_t n, std::uint64_t nnz, std::size_t d);

enum class ZMode { exact, poisson };

/// Expected number of the t columns of a block hit by `entries` nonzeros
/// placed uniformly: t(1 - (1 - 1/t)^D) exactly, t(1 - e^(-D/t)) in the
/// Poisson limit.
double expected_nonempty_columns(double t, double entries, ZMode mode = ZMode::exact);

struct BlockedTraffic {
  double traffic_a_bytes = kBlockedTrafficABytes;
  double reuse_factor = kDefaultReuseFactor;
};

/// Tiled access to B: each of N nonzero blocks loads z rows of B, of which
/// a reuse_factor share reaches memory.
AiEstimate ai_blocked(std::uint64_t n, std::uint64_t nnz, std::size_t d, double n_blocks, double z,
                      BlockedTraffic traffic = {});

/// Share of nonzeros touching the top fraction f of vertices in a power-law
/// graph: f^((alpha - 2) / (alpha - 1)). Requires alpha > 2, 0 < f <= 1.
double hub_mass_fraction(double alpha, double f);

/// Hub rows of B stay cached (loaded once each); all other accesses are
/// random. nnz_hub may be fractional when taken from hub_mass_fraction.
AiEstimate ai_scale_free(std::uint64_t n, std::uint64_t nnz, std::size_t d, double nnz_hub,
                         double n_hub);

/// min(beta * ai, pi).
double roofline_bound(const MachineProfile& p, double ai);

/// Copy of `e` with bound_gflops set from the profile.
AiEstimate with_bound(AiEstimate e, const MachineProfile& p);

}  // namespace sparoof
