#include "sparoof/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sparoof/random.hpp"

namespace sparoof {

namespace {

std::uint64_t pack(std::uint64_t row, std::uint64_t col) { return (row << 32) | col; }

std::size_t draw_count(std::size_t n, double avg) {
  return static_cast<std::size_t>(std::llround(static_cast<double>(n) * avg));
}

}  // namespace

std::string_view to_string(Pattern p) {
  switch (p) {
    case Pattern::random: return "random";
    case Pattern::diagonal: return "diagonal";
    case Pattern::blocked: return "blocked";
    case Pattern::scale_free: return "scale-free";
  }
  return "unknown";
}

Pattern parse_pattern(std::string_view s) {
  if (s == "random") return Pattern::random;
  if (s == "diagonal") return Pattern::diagonal;
  if (s == "blocked") return Pattern::blocked;
  if (s == "scale-free" || s == "scale_free") return Pattern::scale_free;
  throw std::invalid_argument("unknown sparsity pattern '" + std::string(s) + "'");
}

CsrMatrix generate_erdos_renyi(std::size_t n, double avg_nnz_per_row, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (!(avg_nnz_per_row >= 1.0)) throw std::invalid_argument("avg_nnz_per_row must be >= 1");
  if (avg_nnz_per_row >= static_cast<double>(n)) {
    throw std::invalid_argument("avg_nnz_per_row must be below n");
  }
  Rng rng(seed);
  const std::size_t m = draw_count(n, avg_nnz_per_row);
  std::vector<std::uint64_t> keys(m);
  for (auto& key : keys) {
    const auto row = uniform_below(rng, n);
    const auto col = uniform_below(rng, n);
    key = pack(row, col);
  }
  return csr_from_pattern(n, std::move(keys));
}

CsrMatrix generate_ideal_diagonal(std::size_t n) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  std::vector<index_t> row_ptr(n + 1);
  std::vector<index_t> col_idx(n);
  for (std::size_t i = 0; i < n; ++i) {
    row_ptr[i] = static_cast<index_t>(i);
    col_idx[i] = static_cast<index_t>(i);
  }
  row_ptr[n] = static_cast<index_t>(n);
  return CsrMatrix(n, std::move(row_ptr), std::move(col_idx), std::vector<double>(n, 1.0));
}

CsrMatrix generate_scale_free(std::size_t n, double alpha, double avg_degree, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("scale-free generation needs n >= 2");
  if (!(alpha > 2.0)) throw std::invalid_argument("power-law exponent alpha must exceed 2");
  if (!(avg_degree > 0.0) || avg_degree >= static_cast<double>(n)) {
    throw std::invalid_argument("avg_degree must lie in (0, n)");
  }
  // Cumulative weights; an endpoint drawn proportionally to weight gives
  // vertex i an expected degree proportional to w_i.
  const double exponent = -1.0 / (alpha - 1.0);
  std::vector<double> cdf(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += std::pow(static_cast<double>(i + 1), exponent);
    cdf[i] = total;
  }
  const auto draw_vertex = [&](Rng& rng) {
    const double u = uniform01(rng) * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                                static_cast<std::ptrdiff_t>(n - 1)));
  };

  Rng rng(seed);
  const std::size_t edges = draw_count(n, avg_degree / 2.0);
  std::vector<std::uint64_t> keys;
  keys.reserve(2 * edges);
  for (std::size_t e = 0; e < edges; ++e) {
    const auto u = draw_vertex(rng);
    const auto v = draw_vertex(rng);
    if (u == v) continue;
    keys.push_back(pack(u, v));
    keys.push_back(pack(v, u));
  }
  return csr_from_pattern(n, std::move(keys));
}

CsrMatrix generate_blocked(std::size_t n, double avg_nnz_per_row, std::size_t block_dim,
                           std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (block_dim == 0) throw std::invalid_argument("block dimension must be at least 1");
  if (!(avg_nnz_per_row >= 1.0)) throw std::invalid_argument("avg_nnz_per_row must be >= 1");
  if (avg_nnz_per_row >= static_cast<double>(std::min(n, 3 * block_dim))) {
    throw std::invalid_argument("avg_nnz_per_row exceeds the block band width");
  }
  const std::size_t n_block = (n + block_dim - 1) / block_dim;
  Rng rng(seed);
  const std::size_t m = draw_count(n, avg_nnz_per_row);
  std::vector<std::uint64_t> keys;
  keys.reserve(m);
  while (keys.size() < m) {
    const auto row = uniform_below(rng, n);
    const auto br = static_cast<std::int64_t>(row / block_dim);
    const auto bc = br + static_cast<std::int64_t>(uniform_below(rng, 3)) - 1;
    const auto local = uniform_below(rng, block_dim);
    if (bc < 0 || bc >= static_cast<std::int64_t>(n_block)) continue;
    const auto col = static_cast<std::uint64_t>(bc) * block_dim + local;
    if (col >= n) continue;
    keys.push_back(pack(row, col));
  }
  return csr_from_pattern(n, std::move(keys));
}

CsrMatrix generate(const GenSpec& spec) {
  if (spec.n == 0) throw std::invalid_argument("n must be at least 1");
  switch (spec.pattern) {
    case Pattern::random: return generate_erdos_renyi(spec.n, spec.avg_nnz_per_row, spec.seed);
    case Pattern::diagonal: return generate_ideal_diagonal(spec.n);
    case Pattern::blocked:
      return generate_blocked(spec.n, spec.avg_nnz_per_row, spec.block_dim, spec.seed);
    case Pattern::scale_free:
      return generate_scale_free(spec.n, spec.alpha, spec.avg_nnz_per_row, spec.seed);
  }
  throw std::invalid_argument("unknown pattern");
}

}  // namespace sparoof
