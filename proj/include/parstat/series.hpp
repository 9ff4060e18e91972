#ifndef PARSTAT_SERIES_HPP
#define PARSTAT_SERIES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"

namespace parstat {

/**
 * Formal power series with exact integer coefficients, truncated mod x^{N+1}.
 *
 * Index i of the coefficient vector holds [x^i]; there are always exactly
 * order() + 1 of them. Every operation below returns a new series; no
 * coefficient beyond order() is ever produced or read.
 */
class TruncatedSeries {
public:
  explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1) {}

  TruncatedSeries(std::size_t order, std::vector<Integer> coeffs)
      : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != order + 1) {
      throw usage_error("TruncatedSeries: expected " + std::to_string(order + 1) +
                        " coefficients, got " + std::to_string(coeffs_.size()));
    }
  }

  /// The constant series 1.
  static TruncatedSeries one(std::size_t order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = 1;
    return s;
  }

  /// 1/(1 - x^j) = 1 + x^j + x^{2j} + ...
  static TruncatedSeries geometric(std::size_t order, std::int64_t j) {
    if (j < 1) {
      throw usage_error("geometric: step must be >= 1");
    }
    TruncatedSeries s(order);
    for (std::size_t i = 0; i <= order; i += static_cast<std::size_t>(j)) {
      s.coeffs_[i] = 1;
    }
    return s;
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }

  const Integer& operator[](std::size_t i) const { return coeffs_.at(i); }

  std::span<const Integer> coeffs() const noexcept { return coeffs_; }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

private:
  friend TruncatedSeries series_add(const TruncatedSeries&, const TruncatedSeries&);
  friend TruncatedSeries series_mul(const TruncatedSeries&, const TruncatedSeries&);
  friend TruncatedSeries mul_inv_factor(TruncatedSeries, std::int64_t);
  friend TruncatedSeries mul_factor(TruncatedSeries, std::int64_t);
  friend TruncatedSeries shift(TruncatedSeries, std::size_t);

  std::vector<Integer> coeffs_;
};

namespace detail {

inline void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b,
                               const char* op) {
  if (a.order() != b.order()) {
    throw usage_error(std::string(op) + ": mismatched orders " +
                      std::to_string(a.order()) + " and " + std::to_string(b.order()));
  }
}

inline void require_positive_step(std::int64_t j, const char* op) {
  if (j < 1) {
    throw usage_error(std::string(op) + ": factor index must be >= 1, got " +
                      std::to_string(j));
  }
}

} // namespace detail

inline TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::require_same_order(a, b, "series_add");
  TruncatedSeries r = a;
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
    r.coeffs_[i] += b.coeffs_[i];
  }
  return r;
}

/// Cauchy product truncated at the common order. Plain O(N^2).
inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::require_same_order(a, b, "series_mul");
  const std::size_t n = a.order();
  TruncatedSeries r(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a.coeffs_[i] == 0) {
      continue;
    }
    for (std::size_t k = 0; i + k <= n; ++k) {
      mpz_addmul(r.coeffs_[i + k].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                 b.coeffs_[k].get_mpz_t());
    }
  }
  return r;
}

/// Multiply by (1 - x^j)^{-1}: c_i += c_{i-j}, ascending.
inline TruncatedSeries mul_inv_factor(TruncatedSeries a, std::int64_t j) {
  detail::require_positive_step(j, "mul_inv_factor");
  const auto step = static_cast<std::size_t>(j);
  for (std::size_t i = step; i < a.coeffs_.size(); ++i) {
    a.coeffs_[i] += a.coeffs_[i - step];
  }
  return a;
}

/// Multiply by (1 - x^j): c_i -= c_{i-j}, descending so each c_{i-j} is
/// still the original value.
inline TruncatedSeries mul_factor(TruncatedSeries a, std::int64_t j) {
  detail::require_positive_step(j, "mul_factor");
  const auto step = static_cast<std::size_t>(j);
  for (std::size_t i = a.coeffs_.size(); i-- > step;) {
    a.coeffs_[i] -= a.coeffs_[i - step];
  }
  return a;
}

/// Multiply by x^m, dropping whatever falls past the order.
inline TruncatedSeries shift(TruncatedSeries a, std::size_t m) {
  const std::size_t size = a.coeffs_.size();
  if (m >= size) {
    return TruncatedSeries(size - 1);
  }
  for (std::size_t i = size; i-- > m;) {
    a.coeffs_[i] = std::move(a.coeffs_[i - m]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    a.coeffs_[i] = 0;
  }
  return a;
}

/// P(x) = prod_{j>=1} (1 - x^j)^{-1} mod x^{N+1}; [x^n] is p(n).
/// Factors with j > N only touch degrees above N, so they are skipped.
inline TruncatedSeries euler_product(std::size_t order) {
  TruncatedSeries p = TruncatedSeries::one(order);
  for (std::size_t j = 1; j <= order; ++j) {
    p = mul_inv_factor(std::move(p), static_cast<std::int64_t>(j));
  }
  return p;
}

} // namespace parstat

#endif // PARSTAT_SERIES_HPP
