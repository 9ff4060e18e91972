#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <parstat/error.hpp>
#include <parstat/series.hpp>

#include "oracle.hpp"

using parstat::Integer;
using parstat::TruncatedSeries;

namespace {

TruncatedSeries random_series(std::size_t order, std::mt19937_64& gen) {
  std::uniform_int_distribution<long> d(-50, 50);
  std::vector<Integer> c(order + 1);
  for (auto& x : c) {
    x = d(gen);
  }
  return TruncatedSeries(order, std::move(c));
}

} // namespace

TEST(TruncatedSeries, ConstructionAndAccess) {
  const TruncatedSeries z(4);
  EXPECT_EQ(z.order(), 4u);
  for (std::size_t i = 0; i <= 4; ++i) {
    EXPECT_EQ(z[i], 0);
  }
  const auto one = TruncatedSeries::one(3);
  EXPECT_EQ(one[0], 1);
  EXPECT_EQ(one[3], 0);
  EXPECT_THROW(TruncatedSeries(3, std::vector<Integer>(2)), parstat::usage_error);
}

TEST(TruncatedSeries, GeometricHasOnesAtMultiples) {
  const auto g = TruncatedSeries::geometric(10, 3);
  for (std::size_t i = 0; i <= 10; ++i) {
    EXPECT_EQ(g[i], i % 3 == 0 ? 1 : 0) << i;
  }
}

TEST(TruncatedSeries, MismatchedOrdersThrow) {
  EXPECT_THROW(series_add(TruncatedSeries(3), TruncatedSeries(4)), parstat::usage_error);
  EXPECT_THROW(series_mul(TruncatedSeries(3), TruncatedSeries(4)), parstat::usage_error);
}

TEST(TruncatedSeries, NonPositiveFactorThrows) {
  EXPECT_THROW(mul_inv_factor(TruncatedSeries::one(5), 0), parstat::usage_error);
  EXPECT_THROW(mul_factor(TruncatedSeries::one(5), -2), parstat::usage_error);
}

TEST(TruncatedSeries, ShiftMovesCoefficientsAndTruncates) {
  const TruncatedSeries a(4, {1, 2, 3, 4, 5});
  const auto s = shift(a, 2);
  const TruncatedSeries want(4, {0, 0, 1, 2, 3});
  EXPECT_EQ(s, want);
}

TEST(TruncatedSeries, EulerProductMatchesPartitionCounts) {
  const auto p = parstat::euler_product(60);
  for (std::int64_t n = 0; n <= 60; ++n) {
    EXPECT_EQ(p[static_cast<std::size_t>(n)], oracle::p(n)) << n;
  }
}

TEST(TruncatedSeriesProperty, MultiplicationCommutesAndAssociates) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t order = 1 + gen() % 20;
    const auto a = random_series(order, gen);
    const auto b = random_series(order, gen);
    const auto c = random_series(order, gen);
    EXPECT_EQ(series_mul(a, b), series_mul(b, a));
    EXPECT_EQ(series_mul(series_mul(a, b), c), series_mul(a, series_mul(b, c)));
    EXPECT_EQ(series_mul(a, series_add(b, c)), series_add(series_mul(a, b), series_mul(a, c)));
    EXPECT_EQ(series_mul(a, TruncatedSeries::one(order)), a);
  }
}

TEST(TruncatedSeriesProperty, InverseFactorIsGeometricProduct) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t order = 1 + gen() % 30;
    const auto j = static_cast<std::int64_t>(1 + gen() % (order + 3));
    const auto a = random_series(order, gen);
    EXPECT_EQ(mul_inv_factor(a, j), series_mul(a, TruncatedSeries::geometric(order, j)));
  }
}

TEST(TruncatedSeriesProperty, FactorUndoesInverseFactor) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t order = 1 + gen() % 30;
    const auto j = static_cast<std::int64_t>(1 + gen() % (order + 3));
    const auto a = random_series(order, gen);
    EXPECT_EQ(mul_factor(mul_inv_factor(a, j), j), a);
    EXPECT_EQ(mul_inv_factor(mul_factor(a, j), j), a);
  }
}

TEST(TruncatedSeriesProperty, ShiftEqualsMonomialProduct) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t order = 1 + gen() % 15;
    const std::size_t m = gen() % (order + 2);
    const auto a = random_series(order, gen);
    std::vector<Integer> mono(order + 1);
    if (m <= order) {
      mono[m] = 1;
    }
    EXPECT_EQ(shift(a, m), series_mul(a, TruncatedSeries(order, std::move(mono))));
  }
}
