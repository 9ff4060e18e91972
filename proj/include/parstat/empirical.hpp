#ifndef PARSTAT_EMPIRICAL_HPP
#define PARSTAT_EMPIRICAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "error.hpp"

namespace parstat {

/**
 * Two-sided Kolmogorov-Smirnov distance sup_x |F_N(x) - F(x)| against a
 * continuous CDF. The sample may contain ties (the statistics are lattice
 * valued); the sup is taken on both sides of every distinct jump point.
 */
inline double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) {
    throw usage_error("ks_distance: empty sample");
  }
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sample.size()) {
    std::size_t j = i;
    while (j < sample.size() && sample[j] == sample[i]) {
      ++j;
    }
    const double f = cdf(sample[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n),
                  std::abs(static_cast<double>(j) / n - f)});
    i = j;
  }
  return d;
}

// Standard deviation of sqrt(N) D_N under the null (Kolmogorov law), ~0.2603.
inline constexpr double kKolmogorovSd = 0.26036;

inline double ks_standard_error(std::size_t n) {
  return kKolmogorovSd / std::sqrt(static_cast<double>(n));
}

struct MeanAndError {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t count = 0;
};

inline MeanAndError mean_and_error(std::span<const double> xs) {
  MeanAndError r;
  r.count = xs.size();
  if (xs.empty()) {
    return r;
  }
  double sum = 0.0;
  for (double x : xs) {
    sum += x;
  }
  r.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) {
      ss += (x - r.mean) * (x - r.mean);
    }
    const double var = ss / static_cast<double>(xs.size() - 1);
    r.standard_error = std::sqrt(var / static_cast<double>(xs.size()));
  }
  return r;
}

struct ChiSquare {
  double statistic = 0.0;
  std::int64_t dof = 0;
  /// (statistic - dof) / sqrt(2 dof): distance above the null mean in
  /// null standard deviations.
  double sigmas = 0.0;
};

inline ChiSquare finish_chi_square(double stat, std::int64_t dof) {
  const double d = static_cast<double>(dof);
  return {stat, dof, dof > 0 ? (stat - d) / std::sqrt(2.0 * d) : 0.0};
}

/// Goodness of fit of category tallies against equal probabilities.
inline ChiSquare chi_square_uniform(std::span<const std::int64_t> tallies) {
  if (tallies.size() < 2) {
    throw usage_error("chi_square_uniform: need at least two categories");
  }
  double total = 0.0;
  for (auto t : tallies) {
    total += static_cast<double>(t);
  }
  const double expected = total / static_cast<double>(tallies.size());
  double stat = 0.0;
  for (auto t : tallies) {
    const double diff = static_cast<double>(t) - expected;
    stat += diff * diff / expected;
  }
  return finish_chi_square(stat, static_cast<std::int64_t>(tallies.size()) - 1);
}

/// Two-sample homogeneity test on tallies of possibly different totals.
inline ChiSquare chi_square_two_sample(std::span<const std::int64_t> a,
                                       std::span<const std::int64_t> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw usage_error("chi_square_two_sample: tallies must have equal length >= 2");
  }
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += static_cast<double>(a[i]);
    nb += static_cast<double>(b[i]);
  }
  const double ka = std::sqrt(nb / na);
  const double kb = std::sqrt(na / nb);
  double stat = 0.0;
  std::int64_t used = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double s = static_cast<double>(a[i] + b[i]);
    if (s == 0.0) {
      continue;
    }
    const double diff = ka * static_cast<double>(a[i]) - kb * static_cast<double>(b[i]);
    stat += diff * diff / s;
    ++used;
  }
  return finish_chi_square(stat, used - 1);
}

} // namespace parstat

#endif // PARSTAT_EMPIRICAL_HPP
