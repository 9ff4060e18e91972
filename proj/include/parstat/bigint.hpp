#ifndef PARSTAT_BIGINT_HPP
#define PARSTAT_BIGINT_HPP

#include <cmath>
#include <cstdlib>
#include <string>

#include <gmpxx.h>

namespace parstat {

// Arbitrary-precision integer. Used both for counts (never negative) and for
// series coefficients, which go negative in intermediate products.
using Integer = mpz_class;
using Natural = mpz_class;

// Always canonical (gcd(num, den) == 1, den > 0) once built via make_rational.
using ExactRational = mpq_class;

inline ExactRational make_rational(const Integer& num, const Integer& den) {
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

/// Nearest double. mpq get_d truncates, so go through a 256-bit float and
/// let strtod do the rounding.
inline double to_double(const ExactRational& q) {
  if (q == 0) {
    return 0.0;
  }
  const mpf_class f(q, 256);
  mp_exp_t exp10 = 0;
  std::string digits = f.get_str(exp10, 10, 40);
  const bool negative = digits.front() == '-';
  if (negative) {
    digits.erase(0, 1);
  }
  const std::string text =
      (negative ? "-0." : "0.") + digits + "e" + std::to_string(static_cast<long>(exp10));
  return std::strtod(text.c_str(), nullptr);
}

/// Natural logarithm of a positive big integer without overflowing double.
inline double log_of(const Integer& z) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

/// `num/den` for rationals, plain digits when the denominator is one.
inline std::string to_string(const ExactRational& q) {
  if (q.get_den() == 1) {
    return q.get_num().get_str();
  }
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

} // namespace parstat

#endif // PARSTAT_BIGINT_HPP
