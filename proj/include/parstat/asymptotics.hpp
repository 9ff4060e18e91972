#ifndef PARSTAT_ASYMPTOTICS_HPP
#define PARSTAT_ASYMPTOTICS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "error.hpp"

namespace parstat::asympt {

struct Constants {
  /// pi / sqrt(6)
  static constexpr double c = 1.2825498301618640955;
  static constexpr double gamma = 0.57721566490153286061;
  /// log c + 1 - gamma
  static inline const double C = std::log(c) + 1.0 - gamma;
};

inline double c_from_pi() { return std::numbers::pi / std::sqrt(6.0); }

struct AsymptoticEstimate {
  double value = 0.0;
  std::string_view claimed_error_order;
};

struct SeriesEvalControl {
  double u = 0.0;
  std::int64_t max_terms = 50'000'000;
  double tail_tolerance = 1e-13;
};

namespace detail {

inline double as_double(std::int64_t n) { return static_cast<double>(n); }

inline void require_at_least(std::int64_t n, std::int64_t lo, const char* op) {
  if (n < lo) {
    throw usage_error(std::string(op) + ": n must be >= " + std::to_string(lo));
  }
}

} // namespace detail

/// H(u) = exp(-(1/c) e^{-cu}), the limit law of the centred largest part.
inline double gumbel_cdf(double u) {
  constexpr double c = Constants::c;
  return std::exp(-std::exp(-c * u) / c);
}

inline double gumbel_pdf(double u) {
  constexpr double c = Constants::c;
  return std::exp(-c * u) * gumbel_cdf(u);
}

inline double log_hardy_ramanujan(std::int64_t n) {
  detail::require_at_least(n, 1, "hardy_ramanujan");
  const double x = detail::as_double(n);
  return std::numbers::pi * std::sqrt(2.0 * x / 3.0) - std::log(4.0 * x * std::sqrt(3.0));
}

/// exp(pi sqrt(2n/3)) / (4 n sqrt 3). Overflows to +inf past n ~ 4e4; use
/// log_hardy_ramanujan there.
inline double hardy_ramanujan(std::int64_t n) { return std::exp(log_hardy_ramanujan(n)); }

/// 1 - c/sqrt(n) + (1 + c^2/2)/n  ~  P(M_n = 1).
inline AsymptoticEstimate expansion_prob_m1(std::int64_t n) {
  detail::require_at_least(n, 1, "expansion_prob_m1");
  constexpr double c = Constants::c;
  const double x = detail::as_double(n);
  return {1.0 - c / std::sqrt(x) + (1.0 + c * c / 2.0) / x, "O(n^{-3/2})"};
}

/// Leading term sqrt(n)/(2c) log n shared by E(L_n) and E(L_nM_n).
inline double expected_lm_leading(std::int64_t n) {
  detail::require_at_least(n, 2, "expected_lm_leading");
  const double x = detail::as_double(n);
  return std::sqrt(x) / (2.0 * Constants::c) * std::log(x);
}

/**
 * Four-term expansion of E(L_n):
 *
 *   sqrt(n)/(2c) (log n + 2 gamma - 2 log c) + log(n)/(4c^2) + 1/4
 *     + (1 + 2 gamma - 2 log c)/(4c^2).
 *
 * The log n coefficient is 1/(4c^2); the exact values and the saddle-point
 * expansion of the t^{-1} log(1/t) term both give it.
 */
inline AsymptoticEstimate expansion_expected_largest(std::int64_t n) {
  detail::require_at_least(n, 2, "expansion_expected_largest");
  constexpr double c = Constants::c;
  constexpr double g = Constants::gamma;
  const double x = detail::as_double(n);
  const double lc = std::log(c);
  const double value = std::sqrt(x) / (2.0 * c) * (std::log(x) + 2.0 * g - 2.0 * lc) +
                       std::log(x) / (4.0 * c * c) + 0.25 +
                       (1.0 + 2.0 * g - 2.0 * lc) / (4.0 * c * c);
  return {value, "O(log(n)/n)"};
}

/// First summand of expansion_expected_largest only.
inline double expected_largest_leading(std::int64_t n) {
  detail::require_at_least(n, 2, "expected_largest_leading");
  constexpr double c = Constants::c;
  const double x = detail::as_double(n);
  return std::sqrt(x) / (2.0 * c) *
         (std::log(x) + 2.0 * Constants::gamma - 2.0 * std::log(c));
}

/// E(L_n) + (1/2) log n - C.
inline AsymptoticEstimate expansion_expected_lm(std::int64_t n) {
  detail::require_at_least(n, 2, "expansion_expected_lm");
  const double x = detail::as_double(n);
  return {expansion_expected_largest(n).value + 0.5 * std::log(x) - Constants::C,
          "O(1/log(n))"};
}

/// [x^n](P F_2)/p(n) = E(L_nM_n) - E(L_n)  ~  log(sqrt(n)/c) + gamma - 1.
inline AsymptoticEstimate expansion_f2_coeff(std::int64_t n) {
  detail::require_at_least(n, 2, "expansion_f2_coeff");
  const double x = detail::as_double(n);
  return {std::log(std::sqrt(x) / Constants::c) + Constants::gamma - 1.0, "O(1/log(n))"};
}

/**
 * Main term of [x^n](P(x)G(x))/p(n) when G(e^{-t}) = a t^b:
 *
 *   a (2 pi / sqrt(24n-1))^b  s/(s-1)  sum_{j=0}^{b+1} (b+j+1)! / (j! (b+1-j)!) (-1/(2s))^j
 *
 * with s = 2c sqrt(n - 1/24). The sum is the terminating asymptotic series of
 * the Bessel ratio I_{b+3/2}(s)/I_{3/2}(s); exponentially small terms dropped.
 */
inline double grabner_power_term(double a, std::int64_t b, std::int64_t n) {
  if (b < 0) {
    throw usage_error("grabner_power_term: b must be >= 0");
  }
  detail::require_at_least(n, 1, "grabner_power_term");
  const double x = detail::as_double(n);
  const double s = 2.0 * Constants::c * std::sqrt(x - 1.0 / 24.0);
  const double scale = std::pow(2.0 * std::numbers::pi / std::sqrt(24.0 * x - 1.0),
                                static_cast<double>(b));
  double sum = 0.0;
  for (std::int64_t j = 0; j <= b + 1; ++j) {
    // (b+j+1)! / (j! (b+1-j)!) via lgamma, exact enough for small b
    const double log_coeff = std::lgamma(static_cast<double>(b + j + 2)) -
                             std::lgamma(static_cast<double>(j + 1)) -
                             std::lgamma(static_cast<double>(b + 2 - j));
    sum += std::exp(log_coeff) * std::pow(-1.0 / (2.0 * s), static_cast<double>(j));
  }
  return a * scale * s / (s - 1.0) * sum;
}

/// a log(sqrt(24n-1)/(2 pi)), the main term when G(e^{-t}) = a log(1/t).
inline double grabner_log_term(double a, std::int64_t n) {
  detail::require_at_least(n, 1, "grabner_log_term");
  const double x = detail::as_double(n);
  return a * std::log(std::sqrt(24.0 * x - 1.0) / (2.0 * std::numbers::pi));
}

/// (log(1/u) + gamma)/u + 1/4 - u/144, small-u expansion of F_1(e^{-u}).
inline double f1_expansion(double u) {
  return (std::log(1.0 / u) + Constants::gamma) / u + 0.25 - u / 144.0;
}

/// log(1/u) + gamma - 1, small-u behaviour of F_2(e^{-u}).
inline double f2_expansion(double u) { return std::log(1.0 / u) + Constants::gamma - 1.0; }

/// F_1(e^{-u}) = sum_k 1/(e^{ku} - 1), summed until the geometric tail bound
/// x^{K+1} / ((1-x)(1-x^{K+1})) drops below the tolerance.
inline double eval_f1_direct(const SeriesEvalControl& ctrl) {
  const double u = ctrl.u;
  if (!(u > 0.0) || !(ctrl.tail_tolerance > 0.0)) {
    throw usage_error("eval_f1_direct: u and tolerance must be positive");
  }
  const double one_minus_x = -std::expm1(-u);
  double sum = 0.0;
  for (std::int64_t k = 1;; ++k) {
    const double ku = static_cast<double>(k) * u;
    sum += 1.0 / std::expm1(ku);
    const double xk1 = std::exp(-(ku + u));
    const double tail = xk1 / (one_minus_x * (1.0 - xk1));
    if (tail < ctrl.tail_tolerance) {
      return sum;
    }
    if (k >= ctrl.max_terms) {
      throw convergence_error("eval_f1_direct: tail bound " + std::to_string(tail) +
                                  " above tolerance after max_terms",
                              sum);
    }
  }
}

/**
 * F_2(e^{-u}) = sum_k k e^{-2ku}/(1 - e^{-ku}) g_k(u),
 * g_k(u) = prod_{j>k} (1 - e^{-ju}).
 *
 * The cut-off K is the first index whose remaining-sum bound
 * sum_{k>K} k r^k / (1 - e^{-(K+1)u}), r = e^{-2u}, is below the tolerance
 * (g_k <= 1). Terms are accumulated from K down to 1 so log g_k is a running
 * suffix sum; the factors beyond K enter through log g_K ~ -e^{-(K+1)u}/(1-e^{-u}).
 */
inline double eval_f2_direct(const SeriesEvalControl& ctrl) {
  const double u = ctrl.u;
  if (!(u > 0.0) || u > 0.5 || !(ctrl.tail_tolerance > 0.0)) {
    throw usage_error("eval_f2_direct: u must be in (0, 0.5] and tolerance positive");
  }
  const double r = std::exp(-2.0 * u);
  const double one_minus_r = -std::expm1(-2.0 * u);
  auto tail_bound = [&](std::int64_t kk) {
    const double k = static_cast<double>(kk);
    const double rk1 = std::exp(-2.0 * u * (k + 1.0));
    const double head = rk1 * ((k + 1.0) - k * r) / (one_minus_r * one_minus_r);
    return head / (-std::expm1(-(k + 1.0) * u));
  };

  std::int64_t lo = 1;
  std::int64_t hi = 1;
  while (tail_bound(hi) >= ctrl.tail_tolerance) {
    if (hi >= ctrl.max_terms) {
      hi = ctrl.max_terms;
      break;
    }
    lo = hi;
    hi = std::min<std::int64_t>(hi * 2, ctrl.max_terms);
  }
  const bool converged = tail_bound(hi) < ctrl.tail_tolerance;
  while (converged && hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (tail_bound(mid) < ctrl.tail_tolerance ? hi : lo) = mid;
  }
  const std::int64_t cutoff = hi;

  const double kcut = static_cast<double>(cutoff);
  double log_g = -std::exp(-(kcut + 1.0) * u) / (-std::expm1(-u));
  double sum = 0.0;
  for (std::int64_t kk = cutoff; kk >= 1; --kk) {
    const double k = static_cast<double>(kk);
    const double g = std::exp(log_g);
    sum += k * std::exp(-2.0 * k * u) / (-std::expm1(-k * u)) * g;
    log_g += std::log1p(-std::exp(-k * u));
  }
  if (!converged) {
    throw convergence_error("eval_f2_direct: tail bound not reached within max_terms", sum);
  }
  return sum;
}

/**
 * Limit law of the r-th largest block area:
 *   int_{-inf}^u exp(-e^{-w} - r w)/(r-1)! dw = int_{e^{-u}}^inf y^{r-1} e^{-y}/(r-1)! dy.
 * Integrated by exp-sinh quadrature on the half line, absolute tolerance 1e-10.
 */
inline double fristedt_cdf(double u, std::int64_t r) {
  if (r < 1) {
    throw usage_error("fristedt_cdf: r must be >= 1");
  }
  if (u == std::numeric_limits<double>::infinity()) {
    return 1.0;
  }
  if (u == -std::numeric_limits<double>::infinity()) {
    return 0.0;
  }
  const double lower = std::exp(-u);
  if (lower == std::numeric_limits<double>::infinity()) {
    return 0.0;
  }
  const double rr = static_cast<double>(r);
  const double log_norm = std::lgamma(rr);
  auto integrand = [&](double y) {
    if (y <= 0.0) {
      return r == 1 ? 1.0 : 0.0;
    }
    return std::exp((rr - 1.0) * std::log(y) - y - log_norm);
  };
  // Substitute y = lower + t so the integrator always sees [0, inf).
  auto shifted = [&](double t) { return integrand(lower + t); };
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  double value = 0.0;
  try {
    value = integrator.integrate(shifted, 0.0, std::numeric_limits<double>::infinity(),
                                 1e-12, &error, &l1);
  } catch (const std::exception& e) {
    throw convergence_error(std::string("fristedt_cdf: quadrature failed: ") + e.what(), value);
  }
  if (!(error <= 1e-10) || !std::isfinite(value)) {
    throw convergence_error("fristedt_cdf: quadrature error estimate " + std::to_string(error) +
                                " above 1e-10",
                            value);
  }
  return std::min(1.0, std::max(0.0, value));
}

/// sqrt(n)/(2c) (log n + 2 log log log n - 2 log r); heuristic main term of
/// E(Z^{(r)}), O(sqrt n) remainder not modelled.
inline double expected_z_r(std::int64_t n, std::int64_t r) {
  if (n < 16) {
    throw usage_error("expected_z_r: n must be >= 16 so that log log log n > 0");
  }
  if (r < 1) {
    throw usage_error("expected_z_r: r must be >= 1");
  }
  const double x = detail::as_double(n);
  return std::sqrt(x) / (2.0 * Constants::c) *
         (std::log(x) + 2.0 * std::log(std::log(std::log(x))) -
          2.0 * std::log(static_cast<double>(r)));
}

} // namespace parstat::asympt

#endif // PARSTAT_ASYMPTOTICS_HPP
