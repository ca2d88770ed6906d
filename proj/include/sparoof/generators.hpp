#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sparoof/matrix.hpp"

namespace sparoof {

/// Sparsity regimes the arithmetic-intensity models distinguish.
enum class Pattern { random, diagonal, blocked, scale_free };

std::string_view to_string(Pattern p);
/// Accepts "scale-free" and "scale_free". Throws std::invalid_argument.
Pattern parse_pattern(std::string_view s);

struct GenSpec {
  Pattern pattern = Pattern::random;
  std::size_t n = 0;
  double avg_nnz_per_row = 1.0;  // average degree for scale_free
  double alpha = 2.5;            // scale_free only
  std::size_t block_dim = 32;    // blocked only
  std::uint64_t seed = 1;
};

/// Draws round(n * avg) uniform (row, col) positions and drops repeats.
CsrMatrix generate_erdos_renyi(std::size_t n, double avg_nnz_per_row, std::uint64_t seed);

/// The n x n identity pattern.
CsrMatrix generate_ideal_diagonal(std::size_t n);

/// Symmetric Chung-Lu graph with expected weights (i+1)^(-1/(alpha-1)).
/// Endpoints of round(n * avg_degree / 2) edges are drawn proportionally to
/// weight, self loops and repeats are dropped, and both orientations stored.
CsrMatrix generate_scale_free(std::size_t n, double alpha, double avg_degree, std::uint64_t seed);

/// Banded block structure: each entry lands in a t x t block on the block
/// diagonal or one of its two neighbours, uniformly inside the block.
CsrMatrix generate_blocked(std::size_t n, double avg_nnz_per_row, std::size_t block_dim,
                           std::uint64_t seed);

/// Validates the spec and dispatches on its pattern.
CsrMatrix generate(const GenSpec& spec);

}  // namespace sparoof
