#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparoof/matrix.hpp"

namespace sparoof {

/// Measured block structure of a CSB matrix.
struct BlockStats {
  std::size_t t = 0;
  std::size_t n_blocks = 0;          // N
  std::uint64_t nnz = 0;
  double entries_per_block = 0.0;    // D = nnz / N
  double nonempty_columns = 0.0;     // z, measured mean over nonzero blocks
};

/// Throws MatrixError for a matrix without nonzeros.
BlockStats block_stats_from_csb(const CsbMatrix& a);

/// Nonzeros per column. B row j is read once per entry in column j, so
/// these are the degrees that govern reuse of B.
std::vector<std::uint64_t> column_degrees(const CsrMatrix& a);
std::vector<std::uint64_t> row_degrees(const CsrMatrix& a);

/// Smallest degree >= 2 present; 2 when there is none.
std::uint64_t default_k_min(std::span<const std::uint64_t> degrees);

/// Power-law exponent by maximum likelihood over degrees >= k_min:
///   1 + m / sum ln(k_i / (k_min - 0.5))   (discrete correction), or
///   1 + m / sum ln(k_i / k_min)           (continuous form).
/// Throws std::invalid_argument with fewer than two tail samples or when
/// the log sum is not positive.
double estimate_alpha(std::span<const std::uint64_t> degrees, std::uint64_t k_min,
                      bool discrete_correction = true);

struct PowerLawFit {
  std::uint64_t k_min = 0;
  double alpha = 0.0;
  double ks_distance = 0.0;
  std::size_t tail_size = 0;
};

/// Chooses k_min by minimising the Kolmogorov-Smirnov distance between the
/// tail's empirical distribution and the fitted discrete power law, scanning
/// every distinct degree that leaves at least `min_tail` samples.
PowerLawFit fit_power_law_tail(std::span<const std::uint64_t> degrees, std::size_t min_tail = 50);

struct HubStats {
  double f = 0.0;
  std::uint64_t n_hub = 0;    // ceil(f * n)
  std::uint64_t nnz_hub = 0;  // sum of the n_hub largest degrees
  std::uint64_t nnz = 0;      // sum of all degrees
};

/// Top ceil(f * n) vertices by degree and the nonzeros they carry.
HubStats empirical_hub_mass(std::span<const std::uint64_t> degrees, double f);

}  // namespace sparoof
