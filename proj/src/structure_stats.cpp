#include "sparoof/structure_stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace sparoof {

BlockStats block_stats_from_csb(const CsbMatrix& a) {
  if (a.nnz() == 0) throw MatrixError("block statistics need at least one nonzero");
  const auto blocks = a.blocks();
  const auto lc = a.local_cols();
  const auto n_blocks = static_cast<std::int64_t>(blocks.size());
  std::uint64_t occupied = 0;

  // Integer reduction, so the total is independent of the schedule.
#pragma omp parallel reduction(+ : occupied)
  {
    std::vector<std::uint32_t> stamp(a.t(), 0);
    std::uint32_t epoch = 0;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t b = 0; b < n_blocks; ++b) {
      const CsbBlock& blk = blocks[static_cast<std::size_t>(b)];
      ++epoch;
      for (std::uint32_t k = blk.offset; k < blk.offset + blk.count; ++k) {
        if (stamp[lc[k]] != epoch) {
          stamp[lc[k]] = epoch;
          ++occupied;
        }
      }
    }
  }

  BlockStats s;
  s.t = a.t();
  s.n_blocks = blocks.size();
  s.nnz = a.nnz();
  s.entries_per_block = static_cast<double>(s.nnz) / static_cast<double>(s.n_blocks);
  s.nonempty_columns = static_cast<double>(occupied) / static_cast<double>(s.n_blocks);
  return s;
}

std::vector<std::uint64_t> column_degrees(const CsrMatrix& a) {
  std::vector<std::uint64_t> deg(a.n(), 0);
  for (const index_t c : a.col_idx()) ++deg[c];
  return deg;
}

std::vector<std::uint64_t> row_degrees(const CsrMatrix& a) {
  std::vector<std::uint64_t> deg(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) deg[i] = a.row_nnz(i);
  return deg;
}

std::uint64_t default_k_min(std::span<const std::uint64_t> degrees) {
  std::uint64_t best = 0;
  for (const auto k : degrees) {
    if (k >= 2 && (best == 0 || k < best)) best = k;
  }
  return best == 0 ? 2 : best;
}

double estimate_alpha(std::span<const std::uint64_t> degrees, std::uint64_t k_min,
                      bool discrete_correction) {
  const double base = discrete_correction ? static_cast<double>(k_min) - 0.5
                                          : static_cast<double>(k_min);
  std::size_t m = 0;
  double log_sum = 0.0;
  for (const auto k : degrees) {
    if (k < k_min || k == 0) continue;
    ++m;
    log_sum += std::log(static_cast<double>(k) / base);
  }
  if (m < 2) throw std::invalid_argument("need at least two degrees >= k_min");
  if (!(base > 0.0) || !(log_sum > 0.0) || !std::isfinite(log_sum)) {
    throw std::invalid_argument("likelihood is degenerate: log sum is not positive");
  }
  return 1.0 + static_cast<double>(m) / log_sum;
}

namespace {

/// Hurwitz zeta sum_{j>=0} (q + j)^-s for s > 1, q >= 1: ten direct terms
/// and an Euler-Maclaurin tail.
double hurwitz_zeta(double s, double q) {
  constexpr int kDirect = 10;
  double sum = 0.0;
  for (int j = 0; j < kDirect; ++j) sum += std::pow(q + j, -s);
  const double x = q + kDirect;
  const double xs = std::pow(x, -s);
  sum += x * xs / (s - 1.0) + 0.5 * xs;
  // Bernoulli terms B2/2!, B4/4!, B6/6! with the rising powers of s.
  const double x2 = 1.0 / (x * x);
  double term = s * xs / x;
  sum += term / 12.0;
  term *= (s + 1.0) * (s + 2.0) * x2;
  sum -= term / 720.0;
  term *= (s + 3.0) * (s + 4.0) * x2;
  sum += term / 30240.0;
  return sum;
}

}  // namespace

PowerLawFit fit_power_law_tail(std::span<const std::uint64_t> degrees, std::size_t min_tail) {
  std::vector<std::uint64_t> sorted;
  sorted.reserve(degrees.size());
  for (const auto k : degrees) {
    if (k >= 1) sorted.push_back(k);
  }
  std::sort(sorted.begin(), sorted.end());
  min_tail = std::max<std::size_t>(min_tail, 2);

  // Suffix sums of log(k) let each candidate's MLE be evaluated in O(1).
  const std::size_t m = sorted.size();
  std::vector<double> log_suffix(m + 1, 0.0);
  for (std::size_t i = m; i-- > 0;) log_suffix[i] = log_suffix[i + 1] + std::log(static_cast<double>(sorted[i]));

  PowerLawFit best;
  bool have = false;
  for (std::size_t start = 0; start < m;) {
    const std::uint64_t k_min = sorted[start];
    const std::size_t tail = m - start;
    if (tail < min_tail) break;
    std::size_t next = start;
    while (next < m && sorted[next] == k_min) ++next;
    if (next == m) break;  // a single distinct value cannot be fitted

    const double base = static_cast<double>(k_min) - 0.5;
    const double log_sum = log_suffix[start] - static_cast<double>(tail) * std::log(base);
    const double alpha = 1.0 + static_cast<double>(tail) / log_sum;

    // Compare P(K >= k) at each distinct k in the tail with the discrete
    // power law's survival function zeta(alpha, k) / zeta(alpha, k_min).
    const double norm = hurwitz_zeta(alpha, static_cast<double>(k_min));
    double ks = 0.0;
    for (std::size_t i = start; i < m;) {
      const std::uint64_t k = sorted[i];
      const double empirical = static_cast<double>(m - i) / static_cast<double>(tail);
      const double model = hurwitz_zeta(alpha, static_cast<double>(k)) / norm;
      ks = std::max(ks, std::abs(empirical - model));
      while (i < m && sorted[i] == k) ++i;
    }
    if (!have || ks < best.ks_distance) {
      best = {k_min, alpha, ks, tail};
      have = true;
    }
    start = next;
  }
  if (!have) throw std::invalid_argument("not enough distinct degrees for a tail fit");
  return best;
}

HubStats empirical_hub_mass(std::span<const std::uint64_t> degrees, double f) {
  if (degrees.empty()) throw std::invalid_argument("empty degree list");
  if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("hub fraction must lie in (0, 1]");
  const double raw = f * static_cast<double>(degrees.size());
  // Absorb rounding in f * n so that e.g. 0.001 * 1e5 yields exactly 100.
  auto n_hub = static_cast<std::uint64_t>(std::ceil(raw - raw * 1e-12));
  n_hub = std::clamp<std::uint64_t>(n_hub, 1, degrees.size());

  std::vector<std::uint64_t> sorted(degrees.begin(), degrees.end());
  const auto cut = sorted.begin() + static_cast<std::ptrdiff_t>(n_hub);
  std::nth_element(sorted.begin(), cut - 1, sorted.end(), std::greater<>());

  HubStats h;
  h.f = f;
  h.n_hub = n_hub;
  h.nnz_hub = std::accumulate(sorted.begin(), cut, std::uint64_t{0});
  h.nnz = std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
  return h;
}

}  // namespace sparoof
