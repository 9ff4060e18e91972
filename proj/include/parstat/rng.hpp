#ifndef PARSTAT_RNG_HPP
#define PARSTAT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"

namespace parstat {

/**
 * Reproducible 64-bit generator identified by (seed, stream_id).
 *
 * The engine is std::mt19937_64 initialised through std::seed_seq with the
 * four 32-bit halves (seed_lo, seed_hi, stream_lo, stream_hi). Both are
 * fully specified by the standard, so a given pair yields the same draws on
 * every conforming implementation. Distinct stream ids give unrelated
 * engine states.
 */
class SeededRng {
public:
  SeededRng(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard exponential.
  double exponential() { return -std::log(uniform_open()); }

  /// Uniform integer in [0, bound) by masked rejection on whole 64-bit words.
  Natural uniform_below(const Natural& bound) {
    if (bound <= 0) {
      throw usage_error("uniform_below: bound must be positive");
    }
    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    const std::size_t top_bits = bits - (words - 1) * 64;
    const std::uint64_t top_mask =
        top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
    std::vector<std::uint64_t> buf(words);
    Natural out;
    for (;;) {
      for (auto& w : buf) {
        w = engine_();
      }
      buf.back() &= top_mask;
      // least significant word first
      mpz_import(out.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
      if (out < bound) {
        return out;
      }
    }
  }

private:
  static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    return std::mt19937_64(seq);
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

} // namespace parstat

#endif // PARSTAT_RNG_HPP
