#ifndef PARSTAT_EXPERIMENTS_HPP
#define PARSTAT_EXPERIMENTS_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "asymptotics.hpp"
#include "bigint.hpp"
#include "empirical.hpp"
#include "error.hpp"
#include "exact_stats.hpp"
#include "partition.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "sampler.hpp"
#include "table_cache.hpp"

namespace parstat {

struct RunContext {
  std::optional<TableCache> cache;
  std::ostream* log = &std::cerr;
};

// ---------------------------------------------------------------------------
// Monte Carlo engine

/// Everything the Monte Carlo experiments need from one sampled partition.
struct SampleRecord {
  std::int64_t largest = 0;
  std::int64_t multiplicity = 0;
  std::int64_t area = 0;
  std::int64_t rank = 0;
  std::int64_t z1 = 0;
  std::int64_t z2 = 0;
  std::int64_t z3 = 0;
  bool top3_distinct = false;
  std::uint64_t attempts = 1;
};

inline SampleRecord summarize(const Partition& p, std::uint64_t attempts) {
  const auto s = stats(p);
  const auto bp = block_profile(p);
  SampleRecord r;
  r.largest = s.largest;
  r.multiplicity = s.multiplicity;
  r.area = s.first_block_area;
  r.rank = bp.rank;
  r.z1 = bp.z.size() > 0 ? bp.z[0] : 0;
  r.z2 = bp.z.size() > 1 ? bp.z[1] : 0;
  r.z3 = bp.z.size() > 2 ? bp.z[2] : 0;
  // the three largest part sizes are distinct iff the first three parts are
  r.top3_distinct = p.parts.size() >= 3 && p.parts[0] > p.parts[1] && p.parts[1] > p.parts[2];
  r.attempts = attempts;
  return r;
}

inline constexpr std::int64_t kChunkSize = 1000;

/// Stream id of chunk `chunk` at size n. Fixed, so results do not depend on
/// the worker count.
inline std::uint64_t chunk_stream(std::int64_t n, std::int64_t chunk) {
  return (static_cast<std::uint64_t>(n) << 24) ^ static_cast<std::uint64_t>(chunk);
}

/**
 * Draw `samples` partitions of n and apply `fn` to each.
 *
 * The sample sequence is cut into fixed chunks; chunk i always uses the RNG
 * stream chunk_stream(n, i). Workers pull chunks from a shared counter and
 * write into per-chunk slots, and the slots are concatenated in index order.
 * The table, when used, is shared read-only.
 */
template <class Fn>
auto monte_carlo(std::int64_t n, std::int64_t samples, std::uint64_t seed, SamplerMethod method,
                 std::int64_t workers, const PartitionTable* table, Fn fn,
                 const BoltzmannOptions& opts = {})
    -> std::vector<decltype(fn(std::declval<const Partition&>(), std::uint64_t{}))> {
  using R = decltype(fn(std::declval<const Partition&>(), std::uint64_t{}));
  if (method == SamplerMethod::exact && (table == nullptr || table->max_n() < n)) {
    throw usage_error("monte_carlo: exact sampling at n = " + std::to_string(n) +
                      " needs a partition table of at least that size");
  }
  const std::int64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<std::vector<R>> slots(static_cast<std::size_t>(chunks));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (;;) {
        const std::int64_t c = next.fetch_add(1);
        if (c >= chunks) {
          return;
        }
        SeededRng rng(seed, chunk_stream(n, c));
        const std::int64_t count = std::min(kChunkSize, samples - c * kChunkSize);
        auto& slot = slots[static_cast<std::size_t>(c)];
        slot.reserve(static_cast<std::size_t>(count));
        for (std::int64_t i = 0; i < count; ++i) {
          if (method == SamplerMethod::exact) {
            slot.push_back(fn(sample_exact(n, *table, rng), 1));
          } else {
            auto draw = sample_boltzmann(n, rng, opts);
            slot.push_back(fn(draw.partition, draw.attempts));
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) {
        failure = std::current_exception();
      }
      next.store(chunks);
    }
  };

  const auto nthreads = static_cast<std::size_t>(std::min<std::int64_t>(workers, chunks));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  std::vector<R> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (auto& s : slots) {
    for (auto& r : s) {
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline std::vector<SampleRecord> sample_records(std::int64_t n, const ExperimentSpec& spec,
                                                const PartitionTable* table) {
  return monte_carlo(n, spec.samples, spec.seed, spec.method, spec.workers, table,
                     [](const Partition& p, std::uint64_t attempts) {
                       if (!p.valid()) {
                         throw check_error("sampler emitted an invalid partition");
                       }
                       return summarize(p, attempts);
                     });
}

// ---------------------------------------------------------------------------
// helpers

namespace detail {

inline std::vector<std::int64_t> default_grid(ExperimentKind kind) {
  switch (kind) {
  case ExperimentKind::mnexact_convergence:
  case ExperimentKind::eel_convergence:
  case ExperimentKind::theorem2_gap:
    return {100, 200, 500, 1000, 2000};
  case ExperimentKind::em_convergence:
    return {50, 100, 200, 300, 400, 500};
  case ExperimentKind::gumbel_ks:
  case ExperimentKind::corollary_ks:
  case ExperimentKind::fristedt_check:
    return {1000, 10000};
  case ExperimentKind::rn_conjecture:
    return {1000, 10000, 100000};
  case ExperimentKind::oeis_check: {
    std::vector<std::int64_t> g;
    for (std::int64_t n = 1; n <= 40; ++n) {
      g.push_back(n);
    }
    return g;
  }
  case ExperimentKind::sampler_chi2:
    return {8};
  case ExperimentKind::f2_direct_check:
    return {};
  }
  return {};
}

inline ExperimentSpec with_defaults(ExperimentSpec spec) {
  if (spec.n_grid.empty()) {
    spec.n_grid = default_grid(spec.kind);
  }
  spec.validate();
  return spec;
}

/// Table big enough for `max_n`, from the cache when one is configured.
inline PartitionTable table_for(std::int64_t max_n, const RunContext& ctx) {
  if (max_n > kTableBudget) {
    throw usage_error("n = " + std::to_string(max_n) + " exceeds the partition-table budget of " +
                      std::to_string(kTableBudget));
  }
  if (ctx.cache) {
    return load_table(*ctx.cache, kTableKindPnk, max_n, *ctx.log).table;
  }
  return build_table(max_n);
}

/// Up to three distinct row indices chosen by a seeded stream.
inline std::vector<std::size_t> spot_rows(std::size_t rows, std::uint64_t seed,
                                          const std::vector<std::size_t>& eligible) {
  std::vector<std::size_t> pool = eligible;
  if (pool.empty()) {
    for (std::size_t i = 0; i < rows; ++i) {
      pool.push_back(i);
    }
  }
  SeededRng rng(seed, 0xC0FFEE);
  std::vector<std::size_t> picked;
  while (!pool.empty() && picked.size() < 3) {
    const auto i = static_cast<std::size_t>(rng.next_u64() % pool.size());
    picked.push_back(pool[i]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

inline double log_n(std::int64_t n) { return std::log(static_cast<double>(n)); }

// Largest n for which spot checks rebuild an independent table.
inline constexpr std::int64_t kSpotTableMax = 600;

inline std::vector<std::size_t> rows_with_n_at_most(const std::vector<std::int64_t>& grid,
                                                    std::int64_t limit) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= limit) {
      out.push_back(i);
    }
  }
  return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// exact-vs-asymptotic experiments

/// P(M_n = 1) = p(n-1)/p(n) against 1 - c/sqrt n + (1 + c^2/2)/n.
inline RunReport run_mnexact_convergence(const ExperimentSpec& spec_in, const RunContext& = {}) {
  const auto spec = detail::with_defaults(spec_in);
  RunReport r;
  r.spec = spec;
  r.columns = {"n", "exact", "exact_value", "expansion", "error", "scaled_error"};
  const auto p = partition_counts(spec.n_grid.back());
  for (auto n : spec.n_grid) {
    const auto exact = make_rational(p[static_cast<std::size_t>(n - 1)], p[static_cast<std::size_t>(n)]);
    const double ev = to_double(exact);
    const double est = asympt::expansion_prob_m1(n).value;
    const double err = ev - est;
    r.add_row({n, to_string(exact), ev, est, err,
               std::abs(err) * std::pow(static_cast<double>(n), 1.5)});
  }
  // independent route: coefficients of the Euler product
  for (auto i : detail::spot_rows(r.rows.size(), spec.seed, {})) {
    const auto n = spec.n_grid[i];
    const auto series = euler_product(static_cast<std::size_t>(n));
    const auto check = make_rational(series[static_cast<std::size_t>(n - 1)],
                                     series[static_cast<std::size_t>(n)]);
    if (to_string(check) != std::get<std::string>(r.rows[i][1])) {
      r.passed = false;
      r.notes.push_back("spot check failed at n = " + std::to_string(n));
    }
  }
  return r;
}

/// Exact E(L_n) against the four-term expansion.
inline RunReport run_eel_convergence(const ExperimentSpec& spec_in, const RunContext& ctx = {}) {
  const auto spec = detail::with_defaults(spec_in);
  if (spec.n_grid.front() < 2) {
    throw usage_error("eel_convergence: n must be >= 2");
  }
  RunReport r;
  r.spec = spec;
  r.columns = {"n", "exact", "exact_value", "expansion", "leading", "error", "scaled_error"};
  const auto max_n = spec.n_grid.back();
  const auto totals = largest_part_totals(max_n);
  const auto p = partition_counts(max_n);
  for (auto n : spec.n_grid) {
    const auto idx = static_cast<std::size_t>(n);
    const auto exact = make_rational(totals[idx], p[idx]);
    const double ev = to_double(exact);
    const double est = asympt::expansion_expected_largest(n).value;
    const double err = ev - est;
    r.add_row({n, to_string(exact), ev, est, asympt::expected_largest_leading(n), err,
               std::abs(err) * static_cast<double>(n) / detail::log_n(n)});
  }
  const auto eligible = detail::rows_with_n_at_most(spec.n_grid, detail::kSpotTableMax);
  if (eligible.empty()) {
    r.notes.push_back("spot check skipped: no grid point within the spot-check table size");
    return r;
  }
  const auto picks = detail::spot_rows(r.rows.size(), spec.seed, eligible);
  std::int64_t need = 0;
  for (auto i : picks) {
    need = std::max(need, spec.n_grid[i]);
  }
  const auto table = detail::table_for(need, ctx);
  for (auto i : picks) {
    const auto n = spec.n_grid[i];
    if (to_string(expected_largest(n, table)) != std::get<std::string>(r.rows[i][1])) {
      r.passed = false;
      r.notes.push_back("spot check failed at n = " + std::to_string(n));
    }
  }
  return r;
}

/// E(L_nM_n) - E(L_n) against (1/2) log n - C.
inline RunReport run_theorem2_gap(const ExperimentSpec& spec_in, const RunContext& ctx = {}) {
  const auto spec = detail::with_defaults(spec_in);
  if (spec.n_grid.front() < 2) {
    throw usage_error("theorem2_gap: n must be >= 2");
  }
  RunReport r;
  r.spec = spec;
  r.columns = {"n", "exact_l", "exact_lm", "gap", "target", "residual", "scaled_residual"};
  const auto max_n = spec.n_grid.back();
  const auto l_totals = largest_part_totals(max_n);
  const auto lm_totals = first_block_area_totals(max_n);
  const auto p = partition_counts(max_n);
  std::vector<std::string> lm_exact;
  for (auto n : spec.n_grid) {
    const auto idx = static_cast<std::size_t>(n);
    const auto el = make_rational(l_totals[idx], p[idx]);
    const auto elm = make_rational(lm_totals[idx], p[idx]);
    const double gap = to_double(ExactRational(elm - el));
    const double target = 0.5 * detail::log_n(n) - asympt::Constants::C;
    const double res = gap - target;
    r.add_row({n, to_double(el), to_double(elm), gap, target, res, res * detail::log_n(n)});
    lm_exact.push_back(to_string(elm));
  }
  const auto eligible = detail::rows_with_n_at_most(spec.n_grid, detail::kSpotTableMax);
  if (eligible.empty()) {
    r.notes.push_back("spot check skipped: no grid point within the spot-check table size");
    return r;
  }
  const auto picks = detail::spot_rows(r.rows.size(), spec.seed, eligible);
  std::int64_t need = 0;
  for (auto i : picks) {
    need = std::max(need, spec.n_grid[i]);
  }
  const auto table = detail::table_for(need, ctx);
  for (auto i : picks) {
    const auto n = spec.n_grid[i];
    if (to_string(expected_lm_joint(n, table)) != lm_exact[i]) {
      r.passed = false;
      r.notes.push_back("spot check failed at n = " + std::to_string(n));
    }
  }
  return r;
}

/// Exact E(M_n) and its distance from 1.
inline RunReport run_em_convergence(const ExperimentSpec& spec_in, const RunContext& ctx = {}) {
  const auto spec = detail::with_defaults(spec_in);
  if (spec.n_grid.back() > 500) {
    throw usage_error("em_convergence: exact grid is limited to n <= 500");
  }
  RunReport r;
  r.spec = spec;
  r.columns = {"n", "exact", "exact_value", "abs_deviation", "scaled_deviation"};
  for (auto n : spec.n_grid) {
    const auto e = expected_max_multiplicity(n);
    const double ev = to_double(e);
    const double dev = std::abs(ev - 1.0);
    r.add_row({n, to_string(e), ev, dev, dev * std::sqrt(static_cast<double>(n))});
  }
  const auto picks = detail::spot_rows(r.rows.size(), spec.seed, {});
  std::int64_t need = 0;
  for (auto i : picks) {
    need = std::max(need, spec.n_grid[i]);
  }
  const auto table = detail::table_for(need, ctx);
  for (auto i : picks) {
    const auto n = spec.n_grid[i];
    const auto marg = joint_lm(n, table).by_multiplicity();
    Natural weighted = 0;
    for (const auto& [m, cnt] : marg) {
      weighted += cnt * m;
    }
    if (to_string(make_rational(weighted, table.at(n, n))) != std::get<std::string>(r.rows[i][1])) {
      r.passed = false;
      r.notes.push_back("spot check failed at n = " + std::to_string(n));
    }
  }
  return r;
}

/// Direct F_2(e^{-u}) against log(1/u) + gamma - 1.
inline RunReport run_f2_direct_check(const ExperimentSpec& spec_in, const RunContext& = {}) {
  auto spec = spec_in;
  spec.validate();
  std::vector<double> us = spec.u_grid;
  if (us.empty()) {
    if (spec.n_grid.empty()) {
      us = {1e-2, 1e-3, 1e-4};
    } else {
      for (auto n : spec.n_grid) {
        us.push_back(asympt::Constants::c / std::sqrt(static_cast<double>(n)));
      }
    }
  }
  RunReport r;
  r.spec = spec;
  r.columns = {"u", "direct", "asymptote", "residual", "scaled_residual"};
  for (double u : us) {
    const double direct = asympt::eval_f2_direct({u});
    const double asym = asympt::f2_expansion(u);
    const double res = direct - asym;
    r.add_row({u, direct, asym, res, res * std::log(1.0 / u)});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Monte Carlo experiments

namespace detail {

inline std::optional<PartitionTable> table_if_exact(const ExperimentSpec& spec,
                                                    const RunContext& ctx) {
  if (spec.method != SamplerMethod::exact) {
    return std::nullopt;
  }
  return table_for(spec.n_grid.back(), ctx);
}

inline double mean_attempts(const std::vector<SampleRecord>& recs) {
  double s = 0.0;
  for (const auto& x : recs) {
    s += static_cast<double>(x.attempts);
  }
  return s / static_cast<double>(recs.size());
}

inline RunReport run_normalized_ks(const ExperimentSpec& spec_in, const RunContext& ctx,
                                   bool use_area) {
  const auto spec = with_defaults(spec_in);
  const auto table = table_if_exact(spec, ctx);
  RunReport r;
  r.spec = spec;
  r.columns = {"n", "samples", "ks", "ks_se", "mean", "mean_se", "mean_attempts"};
  for (auto n : spec.n_grid) {
    const auto recs = sample_records(n, spec, table ? &*table : nullptr);
    const double rn = std::sqrt(static_cast<double>(n));
    const double centre = std::log(static_cast<double>(n)) / (2.0 * asympt::Constants::c);
    std::vector<double> xs;
    xs.reserve(recs.size());
    for (const auto& rec : recs) {
      xs.push_back(static_cast<double>(use_area ? rec.area : rec.largest) / rn - centre);
    }
    const auto me = mean_and_error(xs);
    const double ks = ks_distance(xs, asympt::gumbel_cdf);
    r.add_row({n, static_cast<std::int64_t>(recs.size()), ks, ks_standard_error(recs.size()),
               me.mean, me.standard_error, mean_attempts(recs)});
  }
  return r;
}

} // namespace detail

/// KS distance of L_n/sqrt n - log(n)/(2c) to H.
inline RunReport run_gumbel_ks(const ExperimentSpec& spec, const RunContext& ctx = {}) {
  return detail::run_normalized_ks(spec, ctx, false);
}

/// Same with L_nM_n in place of L_n.
inline RunReport run_corollary_ks(const ExperimentSpec& spec, const RunContext& ctx = {}) {
  return detail::run_normalized_ks(spec, ctx, true);
}

/// (c/sqrt n) Z^{(r)} - (1/2) log(n/c^2) - log log log n against the r-th
/// block-area limit law.
inline RunReport run_fristedt_check(const ExperimentSpec& spec_in, const RunContext& ctx = {}) {
  auto spec = detail::with_defaults(spec_in);
  if (spec.r_values.empty()) {
    spec.r_values = {1, 2, 3};
  }
  for (auto r : spec.r_values) {
    if (r < 1 || r > 3) {
      throw usage_error("fristedt_check: r must be in 1..3");
    }
  }
  if (static_cast<double>(spec.n_grid.front()) <= std::exp(std::numbers::e)) {
    throw usage_error("fristedt_check: n must exceed e^e so that log log log n is defined");
  }
  const auto table = detail::table_if_exact(spec, ctx);
  RunReport r;
  r.spec = spec;
  r.columns = {"n", "r", "samples", "ks", "ks_se", "mean", "mean_se"};
  constexpr double c = asympt::Constants::c;
  for (auto n : spec.n_grid) {
    const auto recs = sample_records(n, spec, table ? &*table : nullptr);
    for (const auto& rec : recs) {
      if (rec.z1 < rec.z2 || rec.z2 < rec.z3) {
        throw check_error("fristedt_check: block areas out of order");
      }
    }
    const double x = static_cast<double>(n);
    const double shift = 0.5 * std::log(x / (c * c)) + std::log(std::log(std::log(x)));
    for (auto rr : spec.r_values) {
      std::vector<double> xs;
      xs.reserve(recs.size());
      for (const auto& rec : recs) {
        const auto z = rr == 1 ? rec.z1 : rr == 2 ? rec.z2 : rec.z3;
        xs.push_back(c / std::sqrt(x) * static_cast<double>(z) - shift);
      }
      const auto me = mean_and_error(xs);
      const double ks = ks_distance(xs, [rr](double u) { return asympt::fristedt_cdf(u, rr); });
      r.add_row({n, rr, static_cast<std::int64_t>(recs.size()), ks,
                 ks_standard_error(recs.size()), me.mean, me.standard_error});
    }
  }
  return r;
}

/// Mean rank of the first block among all block areas, against log log n.
inline RunReport run_rn_conjecture(const ExperimentSpec& spec_in, const RunContext& ctx = {}) {
  const auto spec = detail::with_defaults(spec_in);
  if (spec.n_grid.front() < 3) {
    throw usage_error("rn_conjecture: n must be >= 3 so that log log n > 0");
  }
  const auto table = detail::table_if_exact(spec, ctx);
  RunReport r;
  r.spec = spec;
  r.columns = {"n", "samples", "mean_rank", "rank_se", "loglog_n", "ratio", "ratio_se",
               "mean_attempts"};
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (auto n : spec.n_grid) {
    const auto recs = sample_records(n, spec, table ? &*table : nullptr);
    std::vector<double> ranks;
    ranks.reserve(recs.size());
    for (const auto& rec : recs) {
      ranks.push_back(static_cast<double>(rec.rank));
    }
    const auto me = mean_and_error(ranks);
    const double ll = std::log(std::log(static_cast<double>(n)));
    const double ratio = me.mean / ll;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    r.add_row({n, static_cast<std::int64_t>(recs.size()), me.mean, me.standard_error, ll, ratio,
               me.standard_error / ll, detail::mean_attempts(recs)});
  }
  r.summary["ratio_min"] = lo;
  r.summary["ratio_max"] = hi;
  r.summary["ratios_within_factor_2"] = hi <= 2.0 * lo;
  r.notes.push_back("the growth order of E(R_n) is an open conjecture; this is an empirical report");
  return r;
}

/// p(n)E(L_n) and p(n)E(L_nM_n) by generating functions and by enumeration.
inline RunReport run_oeis_check(const ExperimentSpec& spec_in, const RunContext& = {}) {
  const auto spec = detail::with_defaults(spec_in);
  if (spec.n_grid.back() > PartitionStream::kMaxN) {
    throw usage_error("oeis_check: n must be <= 40");
  }
  RunReport r;
  r.spec = spec;
  r.columns = {"n", "largest_total_gf", "largest_total_enum", "area_total_gf",
               "area_total_enum", "match"};
  const auto max_n = spec.n_grid.back();
  const auto l_gf = largest_part_totals(max_n);
  const auto lm_gf = first_block_area_totals(max_n);
  for (auto n : spec.n_grid) {
    Natural l_enum = 0;
    Natural lm_enum = 0;
    auto stream = enumerate_partitions(n);
    while (auto p = stream.next()) {
      const auto s = stats(*p);
      l_enum += s.largest;
      lm_enum += s.first_block_area;
    }
    const auto idx = static_cast<std::size_t>(n);
    const bool match = l_gf[idx] == l_enum && lm_gf[idx] == lm_enum;
    r.passed = r.passed && match;
    r.add_row({n, to_string(l_gf[idx]), to_string(l_enum), to_string(lm_gf[idx]),
               to_string(lm_enum), match});
  }
  return r;
}

struct SamplerTallies {
  std::vector<std::int64_t> exact;
  std::vector<std::int64_t> boltzmann;
};

/// Per-partition counts from both samplers, indexed by enumeration order.
inline SamplerTallies sampler_tallies(std::int64_t n, std::int64_t samples, std::uint64_t seed,
                                      std::int64_t workers) {
  const auto all = all_partitions(n);
  auto index_of = [&](const Partition& p) {
    const auto it = std::lower_bound(all.begin(), all.end(), p,
                                     [](const Partition& a, const Partition& b) { return a > b; });
    if (it == all.end() || *it != p) {
      throw check_error("sampler produced a non-partition: " + p.to_string());
    }
    return static_cast<std::size_t>(it - all.begin());
  };
  auto tally = [&](SamplerMethod method, const PartitionTable* table, std::uint64_t s) {
    const auto idx = monte_carlo(n, samples, s, method, workers, table,
                                 [&](const Partition& p, std::uint64_t) { return index_of(p); });
    std::vector<std::int64_t> t(all.size());
    for (auto i : idx) {
      ++t[i];
    }
    return t;
  };
  const auto table = build_table(n);
  // the second sampler gets its own seed so the two tallies are independent
  return {tally(SamplerMethod::exact, &table, seed),
          tally(SamplerMethod::boltzmann, nullptr, seed ^ 0x9E3779B97F4A7C15ULL)};
}

/// Chi-square uniformity of both samplers and their mutual agreement.
inline RunReport run_sampler_chi2(const ExperimentSpec& spec_in, const RunContext& = {}) {
  const auto spec = detail::with_defaults(spec_in);
  if (spec.n_grid.back() > PartitionStream::kMaxN) {
    throw usage_error("sampler_chi2: n must be <= 40");
  }
  RunReport r;
  r.spec = spec;
  r.columns = {"n", "test", "samples", "statistic", "dof", "sigmas", "pass"};
  for (auto n : spec.n_grid) {
    if (n < 2) {
      throw usage_error("sampler_chi2: need n >= 2 for at least two partitions");
    }
    const auto t = sampler_tallies(n, spec.samples, spec.seed, spec.workers);
    auto add = [&](const char* name, const ChiSquare& cs) {
      const bool pass = cs.sigmas < 5.0;
      r.passed = r.passed && pass;
      r.add_row({n, std::string(name), spec.samples, cs.statistic, cs.dof, cs.sigmas, pass});
    };
    add("uniform_exact", chi_square_uniform(t.exact));
    add("uniform_boltzmann", chi_square_uniform(t.boltzmann));
    add("two_sample", chi_square_two_sample(t.exact, t.boltzmann));
  }
  return r;
}

inline RunReport run_experiment(const ExperimentSpec& spec, const RunContext& ctx = {}) {
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  switch (spec.kind) {
  case ExperimentKind::mnexact_convergence: r = run_mnexact_convergence(spec, ctx); break;
  case ExperimentKind::eel_convergence: r = run_eel_convergence(spec, ctx); break;
  case ExperimentKind::theorem2_gap: r = run_theorem2_gap(spec, ctx); break;
  case ExperimentKind::em_convergence: r = run_em_convergence(spec, ctx); break;
  case ExperimentKind::gumbel_ks: r = run_gumbel_ks(spec, ctx); break;
  case ExperimentKind::corollary_ks: r = run_corollary_ks(spec, ctx); break;
  case ExperimentKind::f2_direct_check: r = run_f2_direct_check(spec, ctx); break;
  case ExperimentKind::fristedt_check: r = run_fristedt_check(spec, ctx); break;
  case ExperimentKind::rn_conjecture: r = run_rn_conjecture(spec, ctx); break;
  case ExperimentKind::oeis_check: r = run_oeis_check(spec, ctx); break;
  case ExperimentKind::sampler_chi2: r = run_sampler_chi2(spec, ctx); break;
  }
  r.name = std::string(to_string(spec.kind));
  r.metadata.timestamp = utc_timestamp();
  r.metadata.seed = spec.seed;
  r.metadata.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

} // namespace parstat

#endif // PARSTAT_EXPERIMENTS_HPP
