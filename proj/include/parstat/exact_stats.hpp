#ifndef PARSTAT_EXACT_STATS_HPP
#define PARSTAT_EXACT_STATS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "partition.hpp"
#include "series.hpp"

namespace parstat {

// Largest table the tools will build in memory (the triangle holds
// ~max_n^2/2 big integers).
inline constexpr std::int64_t kTableBudget = 2500;

/// p(0..max_n) by Euler's pentagonal recurrence
///   p(n) = sum_{k>=1} (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)].
inline std::vector<Natural> partition_counts(std::int64_t max_n) {
  if (max_n < 0) {
    throw usage_error("partition_counts: n must be >= 0");
  }
  std::vector<Natural> p(static_cast<std::size_t>(max_n) + 1);
  p[0] = 1;
  for (std::int64_t n = 1; n <= max_n; ++n) {
    Natural acc = 0;
    for (std::int64_t k = 1;; ++k) {
      const std::int64_t g1 = k * (3 * k - 1) / 2;
      if (g1 > n) {
        break;
      }
      const std::int64_t g2 = k * (3 * k + 1) / 2;
      if (k % 2 == 1) {
        acc += p[static_cast<std::size_t>(n - g1)];
        if (g2 <= n) {
          acc += p[static_cast<std::size_t>(n - g2)];
        }
      } else {
        acc -= p[static_cast<std::size_t>(n - g1)];
        if (g2 <= n) {
          acc -= p[static_cast<std::size_t>(n - g2)];
        }
      }
    }
    p[static_cast<std::size_t>(n)] = std::move(acc);
  }
  return p;
}

inline Natural partition_count(std::int64_t n) {
  if (n < 0) {
    throw usage_error("partition_count: n must be >= 0");
  }
  return partition_counts(n).back();
}

/**
 * p(m, k): partitions of m into parts of size at most k, 0 <= m, k <= max_n.
 *
 * Only the triangle k <= m is stored; lookups with k > m return p(m, m).
 * Immutable after construction.
 */
class PartitionTable {
public:
  PartitionTable() = default;

  explicit PartitionTable(std::int64_t max_n) : max_n_(max_n) {
    if (max_n < 0) {
      throw usage_error("PartitionTable: max_n must be >= 0");
    }
    rows_.resize(static_cast<std::size_t>(max_n) + 1);
    rows_[0] = {Natural(1)};
    for (std::int64_t m = 1; m <= max_n; ++m) {
      auto& row = rows_[static_cast<std::size_t>(m)];
      row.resize(static_cast<std::size_t>(m) + 1);
      row[0] = 0;
      for (std::int64_t k = 1; k <= m; ++k) {
        row[static_cast<std::size_t>(k)] =
            row[static_cast<std::size_t>(k - 1)] + at(m - k, k);
      }
    }
  }

  /// Construct from already-computed rows (used by the cache loader).
  static PartitionTable from_rows(std::vector<std::vector<Natural>> rows) {
    PartitionTable t;
    t.max_n_ = static_cast<std::int64_t>(rows.size()) - 1;
    for (std::size_t m = 0; m < rows.size(); ++m) {
      if (rows[m].size() != m + 1) {
        throw usage_error("PartitionTable: row " + std::to_string(m) + " has wrong length");
      }
    }
    t.rows_ = std::move(rows);
    return t;
  }

  std::int64_t max_n() const noexcept { return max_n_; }

  const Natural& at(std::int64_t m, std::int64_t k) const {
    const auto mm = static_cast<std::size_t>(m);
    const auto kk = static_cast<std::size_t>(std::min(k, m));
    return rows_.at(mm).at(kk);
  }

  const std::vector<Natural>& row(std::int64_t m) const {
    return rows_.at(static_cast<std::size_t>(m));
  }

  friend bool operator==(const PartitionTable& a, const PartitionTable& b) {
    return a.max_n_ == b.max_n_ && a.rows_ == b.rows_;
  }

private:
  std::int64_t max_n_ = -1;
  std::vector<std::vector<Natural>> rows_;
};

inline PartitionTable build_table(std::int64_t max_n) { return PartitionTable(max_n); }

namespace detail {

inline void require_table(const PartitionTable& t, std::int64_t n, const char* op) {
  if (n < 1) {
    throw usage_error(std::string(op) + ": n must be >= 1");
  }
  if (t.max_n() < n) {
    throw usage_error(std::string(op) + ": table max_n " + std::to_string(t.max_n()) +
                      " is smaller than n = " + std::to_string(n));
  }
}

inline void require_positive(std::int64_t n, const char* op) {
  if (n < 1) {
    throw usage_error(std::string(op) + ": n must be >= 1");
  }
}

} // namespace detail

/// P(L_n = k) = (p(n,k) - p(n,k-1)) / p(n). Zero-probability k are omitted.
inline std::map<std::int64_t, ExactRational> dist_largest_part(std::int64_t n,
                                                               const PartitionTable& table) {
  detail::require_table(table, n, "dist_largest_part");
  std::map<std::int64_t, ExactRational> dist;
  const Natural& total = table.at(n, n);
  for (std::int64_t k = 1; k <= n; ++k) {
    Natural count = table.at(n, k) - table.at(n, k - 1);
    if (count != 0) {
      dist.emplace(k, make_rational(count, total));
    }
  }
  return dist;
}

struct MaxMultDistribution {
  std::int64_t n = 0;
  std::map<std::int64_t, ExactRational> probs; // only m with P(M_n = m) > 0
};

/**
 * Distribution of the multiplicity of the largest part.
 *
 * p(n) P(M_n = m) = [x^n] x^m P(x) prod_{j<m} (1 - x^j). Starting from
 * P(x) mod x^{n+1}, the running product picks up one factor (1 - x^m) per
 * step, so the whole distribution costs O(n^2) big-integer additions.
 */
inline MaxMultDistribution dist_max_multiplicity(std::int64_t n) {
  detail::require_positive(n, "dist_max_multiplicity");
  const auto order = static_cast<std::size_t>(n);
  TruncatedSeries running = euler_product(order);
  const Natural total = running[order];
  MaxMultDistribution d{n, {}};
  for (std::int64_t m = 1; m <= n; ++m) {
    if (m > 1) {
      running = mul_factor(std::move(running), m - 1);
    }
    const Integer& count = running[static_cast<std::size_t>(n - m)];
    if (count != 0) {
      d.probs.emplace(m, make_rational(count, total));
    }
  }
  return d;
}

inline ExactRational expected_max_multiplicity(std::int64_t n) {
  const auto d = dist_max_multiplicity(n);
  ExactRational e = 0;
  for (const auto& [m, p] : d.probs) {
    e += p * m;
  }
  return e;
}

/// #{partitions of n with largest part k occurring exactly m times}.
struct JointLM {
  std::int64_t n = 0;
  std::map<std::pair<std::int64_t, std::int64_t>, Natural> counts; // (k, m) -> count

  /// sum over k, keyed by m
  std::map<std::int64_t, Natural> by_multiplicity() const {
    std::map<std::int64_t, Natural> out;
    for (const auto& [km, c] : counts) {
      out[km.second] += c;
    }
    return out;
  }

  /// sum over m, keyed by k
  std::map<std::int64_t, Natural> by_largest() const {
    std::map<std::int64_t, Natural> out;
    for (const auto& [km, c] : counts) {
      out[km.first] += c;
    }
    return out;
  }

  Natural total() const {
    Natural s = 0;
    for (const auto& [km, c] : counts) {
      s += c;
    }
    return s;
  }
};

/// Removing the first block (m rows of length k) leaves a partition of
/// n - km into parts < k, so count(k, m) = p(n - km, k - 1); p(r, 0) = [r == 0].
inline JointLM joint_lm(std::int64_t n, const PartitionTable& table) {
  detail::require_table(table, n, "joint_lm");
  JointLM j{n, {}};
  for (std::int64_t k = 1; k <= n; ++k) {
    for (std::int64_t m = 1; k * m <= n; ++m) {
      const std::int64_t rest = n - k * m;
      const Natural& c = table.at(rest, k - 1);
      if (c != 0) {
        j.counts.emplace(std::pair{k, m}, c);
      }
    }
  }
  return j;
}

inline ExactRational expected_largest(std::int64_t n, const PartitionTable& table) {
  detail::require_table(table, n, "expected_largest");
  Natural weighted = 0;
  for (std::int64_t k = 1; k <= n; ++k) {
    weighted += (table.at(n, k) - table.at(n, k - 1)) * k;
  }
  return make_rational(weighted, table.at(n, n));
}

/// p(n) E(L_nM_n) computed from the joint (L, M) counts.
inline Natural first_block_area_total_joint(std::int64_t n, const PartitionTable& table) {
  const auto j = joint_lm(n, table);
  Natural s = 0;
  for (const auto& [km, c] : j.counts) {
    s += c * (km.first * km.second);
  }
  return s;
}

inline ExactRational expected_lm_joint(std::int64_t n, const PartitionTable& table) {
  return make_rational(first_block_area_total_joint(n, table), table.at(n, n));
}

/// p(n) E(L_n) for n = 0..max_n from P(x) F_1(x), F_1(x) = sum_k x^k/(1-x^k),
/// whose n-th coefficient is the number of divisors of n.
inline std::vector<Natural> largest_part_totals(std::int64_t max_n) {
  if (max_n < 0) {
    throw usage_error("largest_part_totals: max_n must be >= 0");
  }
  const auto order = static_cast<std::size_t>(max_n);
  std::vector<Integer> divisors(order + 1);
  for (std::size_t k = 1; k <= order; ++k) {
    for (std::size_t m = k; m <= order; m += k) {
      divisors[m] += 1;
    }
  }
  const auto prod = series_mul(euler_product(order), TruncatedSeries(order, std::move(divisors)));
  return {prod.coeffs().begin(), prod.coeffs().end()};
}

/**
 * p(n) E(L_n M_n) for n = 0..max_n from the generating function
 *
 *   sum_k  k x^k / (1 - x^k)  prod_{j<=k} (1 - x^j)^{-1}.
 *
 * Q_k = prod_{j<=k}(1-x^j)^{-1} is grown one factor at a time; the k-th
 * summand's coefficients R_k[m] = sum_{l>=1} Q_k[m - lk] satisfy
 * R_k[m] = Q_k[m-k] + R_k[m-k]. Total O(max_n^2).
 */
inline std::vector<Natural> first_block_area_totals(std::int64_t max_n) {
  if (max_n < 0) {
    throw usage_error("first_block_area_totals: max_n must be >= 0");
  }
  const auto order = static_cast<std::size_t>(max_n);
  std::vector<Natural> totals(order + 1);
  TruncatedSeries q = TruncatedSeries::one(order);
  std::vector<Integer> r(order + 1);
  for (std::size_t k = 1; k <= order; ++k) {
    q = mul_inv_factor(std::move(q), static_cast<std::int64_t>(k));
    const auto qc = q.coeffs();
    for (std::size_t m = 0; m < k; ++m) {
      r[m] = 0;
    }
    for (std::size_t m = k; m <= order; ++m) {
      r[m] = qc[m - k] + r[m - k];
      mpz_addmul_ui(totals[m].get_mpz_t(), r[m].get_mpz_t(), static_cast<unsigned long>(k));
    }
  }
  return totals;
}

/// E(L_n M_n) from the generating-function route.
inline ExactRational expected_lm(std::int64_t n) {
  detail::require_positive(n, "expected_lm");
  const auto totals = first_block_area_totals(n);
  return make_rational(totals.back(), partition_count(n));
}

/// E(L_n) from the P(x) F_1(x) route (no table needed).
inline ExactRational expected_largest_series(std::int64_t n) {
  detail::require_positive(n, "expected_largest_series");
  const auto totals = largest_part_totals(n);
  return make_rational(totals.back(), partition_count(n));
}

/**
 * Every partition of n exactly once, parts non-increasing, partitions in
 * reverse-lexicographic order (n, then n-1+1, ...). Limited to n <= 40.
 */
class PartitionStream {
public:
  static constexpr std::int64_t kMaxN = 40;

  explicit PartitionStream(std::int64_t n) {
    if (n < 1 || n > kMaxN) {
      throw usage_error("enumerate_partitions: n must be in [1, 40], got " + std::to_string(n));
    }
    current_.parts = {n};
  }

  std::optional<Partition> next() {
    if (done_) {
      return std::nullopt;
    }
    Partition out = current_;
    advance();
    return out;
  }

private:
  void advance() {
    auto& a = current_.parts;
    std::size_t ones = 0;
    while (!a.empty() && a.back() == 1) {
      a.pop_back();
      ++ones;
    }
    if (a.empty()) {
      done_ = true;
      return;
    }
    const std::int64_t v = a.back() - 1;
    a.back() = v;
    auto rest = static_cast<std::int64_t>(ones) + 1;
    while (rest > v) {
      a.push_back(v);
      rest -= v;
    }
    if (rest > 0) {
      a.push_back(rest);
    }
  }

  Partition current_;
  bool done_ = false;
};

inline PartitionStream enumerate_partitions(std::int64_t n) { return PartitionStream(n); }

inline std::vector<Partition> all_partitions(std::int64_t n) {
  std::vector<Partition> out;
  auto stream = enumerate_partitions(n);
  while (auto p = stream.next()) {
    out.push_back(std::move(*p));
  }
  return out;
}

} // namespace parstat

#endif // PARSTAT_EXACT_STATS_HPP
