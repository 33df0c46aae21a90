#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "circleforge/power_residue.hpp"
#include "circleforge/singular_series.hpp"
#include "oracles.hpp"

using namespace circleforge;

TEST(SeriesTerm, Examples) {
  EXPECT_NEAR(series_term(1, 12345).value, 1.0, 1e-12);
  for (i64 n : {0, 1, 7, 100}) EXPECT_NEAR(series_term(2, n).value, 0.0, 1e-12);
  EXPECT_NEAR(series_term(6, 10).value, series_term(2, 10).value * series_term(3, 10).value, 1e-12);
  EXPECT_THROW(series_term(0, 1), PreconditionError);
}

TEST(SeriesTerm, MatchesMobiusInversionOfCongruenceCounts) {
  for (u64 q = 1; q <= 40; ++q) {
    for (i64 n : {1, 6, 13, 100, 997}) {
      ASSERT_NEAR(series_term(q, n).value, oracle::series_term(q, n), 1e-10) << q << " " << n;
    }
  }
}

TEST(SeriesTerm, RealAndBounded) {
  for (u64 q = 1; q <= 300; ++q) {
    const auto t = series_term(q, 1234567);
    EXPECT_LE(std::abs(t.imag_residual), 1e-9);
    const double w = wk_majorant(2, q).value * wk_majorant(3, q).value * wk_majorant(6, q).value;
    // |A(q;n)| <= phi(q) prod |S_k/q|^2 <= q prod w_k^2 C^6; C calibrated
    EXPECT_LE(std::abs(t.value), 64.0 * q * w * w + 1e-12) << q;
  }
}

TEST(SeriesTerm, Multiplicative) {
  std::mt19937_64 rng(17);
  int tested = 0;
  while (tested < 200) {
    const u64 q1 = 1 + rng() % 100, q2 = 1 + rng() % 100;
    if (gcd(q1, q2) != 1 || q1 * q2 > 10000) continue;
    ++tested;
    const i64 n = static_cast<i64>(1 + rng() % 1000000);
    ASSERT_NEAR(series_term(q1 * q2, n).value,
                series_term(q1, n).value * series_term(q2, n).value, 1e-8);
  }
}

TEST(CongruenceCount, Examples) {
  EXPECT_EQ(congruence_count(1, 0).count, 1u);
  EXPECT_EQ(congruence_count(2, 0).count, 32u);
  EXPECT_EQ(congruence_count(2, 1).count, 32u);
  EXPECT_THROW(congruence_count(10001, 1), PreconditionError);
}

TEST(CongruenceCount, NineFourBySixLoops) {
  u64 direct = 0;
  for (u64 a = 0; a < 9; ++a)
    for (u64 b = 0; b < 9; ++b)
      for (u64 c = 0; c < 9; ++c)
        for (u64 d = 0; d < 9; ++d)
          for (u64 e = 0; e < 9; ++e)
            for (u64 f = 0; f < 9; ++f) {
              const u64 v = a * a + b * b + c * c * c + d * d * d + oracle::ipow(e, 6) + oracle::ipow(f, 6);
              direct += v % 9 == 4;
            }
  EXPECT_EQ(direct, 55404u);  // frozen from the enumeration above
  EXPECT_EQ(congruence_count(9, 4).count, static_cast<u128>(direct));
}

TEST(CongruenceCount, MatchesQuadraticConvolution) {
  for (u64 q = 1; q <= 60; ++q) {
    const auto dist = oracle::congruence_distribution(q);
    const CongruenceCounter counter(q);
    for (u64 r = 0; r < q; ++r) ASSERT_EQ(counter.count(static_cast<i64>(r)).count, dist[r]) << q;
    u128 total = 0;
    for (auto v : dist) total += v;
    ASSERT_EQ(total, static_cast<u128>(q) * q * q * q * q * q);
  }
  // negative n reduces mod q
  EXPECT_EQ(congruence_count(7, -3).count, congruence_count(7, 4).count);
}

TEST(LocalDensity, Examples) {
  EXPECT_DOUBLE_EQ(local_density(2, 1, 1), 1.0);
  EXPECT_THROW(local_density(1009, 1, 2), PreconditionError);
  EXPECT_THROW(local_density(1, 1, 1), PreconditionError);
  EXPECT_THROW(local_density(9, 1, 1), PreconditionError);
  for (unsigned h : {1u, 2u}) {
    double divisor_sum = 0;
    for (unsigned j = 0; j <= h; ++j) divisor_sum += series_term(saturating_pow(3, j), 6).value;
    EXPECT_NEAR(local_density(3, 6, h), divisor_sum, 1e-8);
  }
}

TEST(LocalDensity, StabilizesForSmallPrimes) {
  for (i64 n : {6, 77, 1001, 123457}) {
    EXPECT_NEAR(local_density(2, n, 13), local_density(2, n, 12), 1e-6);
    EXPECT_NEAR(local_density(3, n, 8), local_density(3, n, 7), 1e-6);
  }
}

TEST(DivisorSum, PrimePowersSampled) {
  for (u64 pp : {2u, 4u, 8u, 16u, 64u, 256u, 1024u, 3u, 27u, 243u, 2187u, 5u, 125u, 7u, 49u,
                 343u, 97u, 9409u, 9973u}) {
    const auto f = factorize(pp);
    ASSERT_EQ(f.size(), 1u);
    const CongruenceCounter counter(pp);
    for (i64 n : {1, 6, 999, 31415, 999983}) {
      double sum = 0;
      for (unsigned j = 0; j <= f[0].e; ++j) sum += series_term(saturating_pow(f[0].p, j), n).value;
      const double density =
          static_cast<double>(counter.count(n).count) * std::pow(static_cast<double>(pp), -5.0);
      ASSERT_NEAR(sum, density, 1e-8) << pp << " " << n;
    }
  }
}

TEST(TruncatedSeries, Examples) {
  EXPECT_NEAR(truncated_singular_series(100, 1).value, 1.0, 1e-12);
  EXPECT_NEAR(truncated_singular_series(100, 2).value, 1.0, 1e-12);
  EXPECT_THROW(truncated_singular_series(100, 0), PreconditionError);
  EXPECT_THROW(truncated_singular_series(0, 10), PreconditionError);
  const auto six = truncated_singular_series(6, 1000);
  EXPECT_GT(six.value, 0.0);
  EXPECT_LT(six.value, 10.0);
  EXPECT_LT(six.tail_estimate, 5e-4);  // three decimals against W = 2000
}

TEST(TruncatedSeries, MultiplicativeAssemblyMatchesLiteralSum) {
  for (i64 n : {6, 17, 360, 4097, 999999}) {
    for (u64 W : {10u, 97u, 500u}) {
      EXPECT_NEAR(truncated_singular_series(n, W).value, truncated_singular_series_literal(n, W), 1e-9);
    }
  }
  EXPECT_THROW(truncated_singular_series_literal(6, 501), std::exception);
}

TEST(SeriesTable, PrimePowerTablesMatchDefiningSum) {
  for (u64 pp : {2u, 8u, 9u, 25u, 49u, 64u, 81u, 121u}) {
    const auto table = prime_power_term_table(pp);
    for (u64 r = 0; r < pp; ++r) ASSERT_NEAR(table[r], series_term(pp, static_cast<i64>(r)).value, 1e-11);
  }
}

TEST(SeriesTable, BatchMatchesSingleEvaluation) {
  const SingularSeriesTable table(400);
  std::vector<i64> targets;
  for (i64 n = 1; n <= 300; ++n) targets.push_back(n * 37 + 5);
  const auto batch = table.evaluate_batch(targets, 200);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto single = truncated_singular_series(targets[i], 200);
    ASSERT_NEAR(batch[i].value, single.value, 1e-12);
    ASSERT_NEAR(batch[i].tail_estimate, single.tail_estimate, 1e-12);
    ASSERT_EQ(batch[i].n, targets[i]);
  }
  EXPECT_THROW(table.evaluate(6, 201), PreconditionError);
}

TEST(SeriesTable, PositiveOnSmallRange) {
  const SingularSeriesTable table(2000);
  std::vector<i64> targets;
  for (i64 n = 1; n <= 2000; ++n) targets.push_back(n);
  for (const auto& v : table.evaluate_batch(targets, 1000)) ASSERT_GT(v.value, 0.05) << v.n;
}
