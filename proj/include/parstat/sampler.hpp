#ifndef PARSTAT_SAMPLER_HPP
#define PARSTAT_SAMPLER_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "asymptotics.hpp"
#include "error.hpp"
#include "exact_stats.hpp"
#include "partition.hpp"
#include "rng.hpp"

namespace parstat {

/**
 * Uniform partition of n by the recursive table method.
 *
 * With m left to place and no part allowed above `bound`, the next (largest
 * remaining) part is k with probability (p(m,k) - p(m,k-1)) / p(m,bound).
 * A uniform big integer U < p(m,bound) is drawn and k is the smallest index
 * with U < p(m,k), so the whole draw is exact.
 */
inline Partition sample_exact(std::int64_t n, const PartitionTable& table, SeededRng& rng) {
  if (n < 1) {
    throw usage_error("sample_exact: n must be >= 1");
  }
  if (table.max_n() < n) {
    throw usage_error("sample_exact: table max_n " + std::to_string(table.max_n()) +
                      " is smaller than n = " + std::to_string(n));
  }
  Partition p;
  std::int64_t remaining = n;
  std::int64_t bound = n;
  while (remaining > 0) {
    const std::int64_t top = std::min(bound, remaining);
    const Natural u = rng.uniform_below(table.at(remaining, top));
    std::int64_t lo = 1;
    std::int64_t hi = top;
    while (lo < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (u < table.at(remaining, mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    p.parts.push_back(lo);
    remaining -= lo;
    bound = lo;
  }
  return p;
}

enum class BoltzmannMode {
  /// Draw X_1, X_2, ... and keep the attempt iff sum j X_j == n.
  rejection,
  /// Draw X_2, X_3, ...; if s = sum_{j>=2} j X_j <= n, set X_1 = n - s and
  /// keep with probability q^{n-s} = P(X_1 = n-s)/P(X_1 = 0).
  completion,
};

struct BoltzmannOptions {
  std::uint64_t max_attempts = 10'000'000;
  BoltzmannMode mode = BoltzmannMode::completion;
};

struct BoltzmannDraw {
  Partition partition;
  std::uint64_t attempts = 0;
};

namespace detail {

/**
 * Independent X_j ~ Geometric, P(X_j >= m) = e^{-a j m}, for first <= j <= n,
 * appended to `out` as (j, X_j) for the nonzero ones. Returns false as soon as
 * sum j X_j exceeds n.
 *
 * Most X_j are zero, so indices are visited by thinning: inside a block of
 * width ~1/a starting at b, candidates come from Bernoulli(e^{-ab}) skips and
 * are kept with probability e^{-a(j-b)}.
 */
inline bool draw_multiplicities(std::int64_t first, std::int64_t n, double a, SeededRng& rng,
                                std::vector<std::pair<std::int64_t, std::int64_t>>& out,
                                std::int64_t& total) {
  const auto width = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(1.0 / a)));
  for (std::int64_t b = first; b <= n; b += width) {
    const std::int64_t end = std::min(n, b + width - 1);
    const double cap = std::exp(-a * static_cast<double>(b));
    if (cap == 0.0) {
      break;
    }
    const double log_miss = std::log1p(-cap);
    std::int64_t j = b - 1;
    for (;;) {
      const double skip = std::floor(std::log(rng.uniform_open()) / log_miss);
      if (skip >= static_cast<double>(end - j)) {
        break;
      }
      j += static_cast<std::int64_t>(skip) + 1;
      if (rng.uniform_open() >= std::exp(-a * static_cast<double>(j - b))) {
        continue;
      }
      const double extra = std::floor(rng.exponential() / (a * static_cast<double>(j)));
      if (extra >= static_cast<double>(n)) {
        return false;
      }
      const std::int64_t x = 1 + static_cast<std::int64_t>(extra);
      total += j * x;
      if (total > n) {
        return false;
      }
      out.emplace_back(j, x);
    }
  }
  return true;
}

inline Partition partition_from_pairs(const std::vector<std::pair<std::int64_t, std::int64_t>>& xs,
                                      std::int64_t ones) {
  Partition p;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
    p.parts.insert(p.parts.end(), static_cast<std::size_t>(it->second), it->first);
  }
  p.parts.insert(p.parts.end(), static_cast<std::size_t>(ones), 1);
  return p;
}

} // namespace detail

/**
 * Uniform partition of n from independent geometric multiplicities with
 * q = e^{-c/sqrt(n)}, conditioned on the total by rejection. Conditioning on
 * sum j X_j = n makes every partition equally likely because the joint
 * weight prod_j (1-q^j) q^{j X_j} depends on the X_j only through q^n.
 */
inline BoltzmannDraw sample_boltzmann(std::int64_t n, SeededRng& rng,
                                      const BoltzmannOptions& opts = {}) {
  if (n < 1) {
    throw usage_error("sample_boltzmann: n must be >= 1");
  }
  const double a = asympt::Constants::c / std::sqrt(static_cast<double>(n));
  std::vector<std::pair<std::int64_t, std::int64_t>> xs;
  for (std::uint64_t attempt = 1; attempt <= opts.max_attempts; ++attempt) {
    xs.clear();
    std::int64_t total = 0;
    if (opts.mode == BoltzmannMode::rejection) {
      if (detail::draw_multiplicities(1, n, a, rng, xs, total) && total == n) {
        return {detail::partition_from_pairs(xs, 0), attempt};
      }
      continue;
    }
    if (!detail::draw_multiplicities(2, n, a, rng, xs, total)) {
      continue;
    }
    const std::int64_t ones = n - total;
    if (rng.uniform_open() < std::exp(-a * static_cast<double>(ones))) {
      return {detail::partition_from_pairs(xs, ones), attempt};
    }
  }
  throw budget_error("sample_boltzmann: no acceptance within " +
                     std::to_string(opts.max_attempts) + " attempts at n = " + std::to_string(n));
}

} // namespace parstat

#endif // PARSTAT_SAMPLER_HPP
