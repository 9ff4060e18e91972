#ifndef PARSTAT_PARTITION_HPP
#define PARSTAT_PARTITION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace parstat {

/// A partition of n: parts in non-increasing order, all positive.
struct Partition {
  std::vector<std::int64_t> parts;

  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto p : parts) {
      s += p;
    }
    return s;
  }

  bool valid() const {
    if (parts.empty()) {
      return false;
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] < 1 || (i > 0 && parts[i] > parts[i - 1])) {
        return false;
      }
    }
    return true;
  }

  /// "7+5+5+1"
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) {
        s += '+';
      }
      s += std::to_string(parts[i]);
    }
    return s;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

/// Largest part, its multiplicity, and the first-block area.
struct PartitionStats {
  std::int64_t largest = 0;
  std::int64_t multiplicity = 0;
  std::int64_t first_block_area = 0;

  friend bool operator==(const PartitionStats&, const PartitionStats&) = default;
};

inline PartitionStats stats(const Partition& p) {
  if (!p.valid()) {
    throw usage_error("stats: invalid partition");
  }
  const auto largest = p.parts.front();
  const auto mult = static_cast<std::int64_t>(
      std::count(p.parts.begin(), p.parts.end(), largest));
  return {largest, mult, largest * mult};
}

/// X^{(k)}: how many parts equal k. Only sizes that occur are stored.
struct MultiplicityVector {
  std::int64_t n = 0;
  std::map<std::int64_t, std::int64_t> mult;
};

inline MultiplicityVector multiplicity_vector(const Partition& p) {
  MultiplicityVector v;
  v.n = p.total();
  for (auto part : p.parts) {
    ++v.mult[part];
  }
  return v;
}

/// Rebuild the partition from multiplicities.
inline Partition from_multiplicities(const MultiplicityVector& v) {
  Partition p;
  for (auto it = v.mult.rbegin(); it != v.mult.rend(); ++it) {
    p.parts.insert(p.parts.end(), static_cast<std::size_t>(it->second), it->first);
  }
  return p;
}

/**
 * Block areas k * X^{(k)} of the Ferrers diagram, in non-increasing order.
 *
 * `z[r-1]` is Z^{(r)}. `rank` is the smallest r (1-based) with
 * Z^{(r)} == L * M, compared by value: if some other block has the same area
 * as the first block and sorts ahead of it, the rank is that earlier index.
 */
struct BlockProfile {
  struct Block {
    std::int64_t part = 0;
    std::int64_t area = 0;
  };
  std::vector<Block> blocks; // area desc, then part desc
  std::vector<std::int64_t> z;
  std::int64_t rank = 0;
};

inline BlockProfile block_profile(const Partition& p) {
  const auto s = stats(p);
  BlockProfile bp;
  const auto mv = multiplicity_vector(p);
  bp.blocks.reserve(mv.mult.size());
  for (const auto& [k, x] : mv.mult) {
    bp.blocks.push_back({k, k * x});
  }
  std::sort(bp.blocks.begin(), bp.blocks.end(), [](const auto& a, const auto& b) {
    return a.area != b.area ? a.area > b.area : a.part > b.part;
  });
  bp.z.reserve(bp.blocks.size());
  for (const auto& b : bp.blocks) {
    bp.z.push_back(b.area);
  }
  const auto it = std::find(bp.z.begin(), bp.z.end(), s.first_block_area);
  bp.rank = static_cast<std::int64_t>(it - bp.z.begin()) + 1;
  return bp;
}

/// L/sqrt(n) - log(n)/(2c), the centring of the largest-part limit law.
inline double normalized_l(const Partition& p, std::int64_t n) {
  if (p.total() != n) {
    throw usage_error("normalized_l: partition does not sum to n");
  }
  const double c = std::numbers::pi / std::sqrt(6.0);
  const double rn = std::sqrt(static_cast<double>(n));
  return static_cast<double>(p.parts.front()) / rn -
         std::log(static_cast<double>(n)) / (2.0 * c);
}

/// Same centring applied to the first-block area L*M.
inline double normalized_lm(const Partition& p, std::int64_t n) {
  if (p.total() != n) {
    throw usage_error("normalized_lm: partition does not sum to n");
  }
  const double c = std::numbers::pi / std::sqrt(6.0);
  const double rn = std::sqrt(static_cast<double>(n));
  return static_cast<double>(stats(p).first_block_area) / rn -
         std::log(static_cast<double>(n)) / (2.0 * c);
}

} // namespace parstat

#endif // PARSTAT_PARTITION_HPP
