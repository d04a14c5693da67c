#include <random>

#include <gtest/gtest.h>

#include "qbern/errors.hpp"
#include "qbern/padic.hpp"
#include "support/oracles.hpp"

using qbern::PadicContext;
using qbern::PadicNumber;

namespace {

PadicNumber rat(long num, long den, const PadicContext& ctx) {
  return PadicNumber::from_rational(mpz_class(num), mpz_class(den), ctx);
}

}  // namespace

TEST(Padic, ContextRejectsBadPrimes) {
  EXPECT_THROW(PadicContext(2, 10), qbern::ConfigError);
  EXPECT_THROW(PadicContext(9, 10), qbern::ConfigError);
  EXPECT_THROW(PadicContext(5, 0), qbern::ConfigError);
  EXPECT_NO_THROW(PadicContext(7, 1));
}

TEST(Padic, HalfModThreeToTheFour) {
  const PadicContext ctx(3, 4);
  const auto half = rat(1, 2, ctx);
  EXPECT_EQ(half.valuation(), 0);
  EXPECT_EQ(half.unit_digits(), (std::vector<std::int64_t>{2, 1, 1, 1}));
  EXPECT_EQ(half.unit_digits(), oracle::unit_digits(1, 2, 3, 4));
  EXPECT_EQ(half.unit(), 41);
}

TEST(Padic, ZeroAndScaledValues) {
  const PadicContext ctx(3, 6);
  const auto zero = rat(0, 1, ctx);
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.valuation(), qbern::kInfiniteValuation);

  const auto nine_halves = rat(9, 2, ctx);
  EXPECT_EQ(nine_halves.valuation(), 2);
  EXPECT_EQ(nine_halves.unit_digits(), oracle::unit_digits(1, 2, 3, 6));
}

TEST(Padic, ArithmeticExamples) {
  const PadicContext ctx(3, 10);
  const auto one = PadicNumber::from_integer(1, ctx);
  const auto q = PadicNumber::from_integer(4, ctx);
  const auto d = q - one;
  EXPECT_EQ(d.valuation(), 1);
  EXPECT_EQ(d.unit_digits().front(), 1);

  EXPECT_EQ((PadicNumber::from_integer(3, ctx) * PadicNumber::from_integer(6, ctx)).valuation(), 2);
  EXPECT_EQ(q + PadicNumber(ctx), q);
  EXPECT_EQ(PadicNumber::from_integer(18, ctx).valuation(), 2);
}

TEST(Padic, PrecisionPropagation) {
  const PadicContext ctx(5, 12);
  const auto a = PadicNumber::from_scaled(7, 0, 8, ctx);
  const auto b = PadicNumber::from_scaled(3, 2, 12, ctx);
  EXPECT_EQ((a + b).precision(), 8);
  EXPECT_EQ((a * b).precision(), std::min<std::int64_t>(8 + 2, 12 + 0));
  const auto quotient = a / b;
  EXPECT_EQ(quotient.valuation(), -2);
  // relative precision min(8, 10) = 8, so absolute -2 + 8
  EXPECT_EQ(quotient.precision(), 6);
}

TEST(Padic, DivisionExamples) {
  const PadicContext ctx(3, 10);
  const auto one = PadicNumber::from_integer(1, ctx);
  const auto q = PadicNumber::from_integer(4, ctx);
  const auto x = rat(22, 7, ctx);
  EXPECT_TRUE(qbern::equals_to_precision(x / x, one, (x / x).precision()));
  const auto r = one / (q * q - one);
  EXPECT_EQ(r.valuation(), -1);
  EXPECT_TRUE(oracle::agrees(r, mpq_class(1, 15), r.precision()));
  EXPECT_THROW(one / PadicNumber(ctx), qbern::DivisionByZero);
}

TEST(Padic, DivisionExhaustsPrecision) {
  const PadicContext ctx(3, 4);
  const auto one = PadicNumber::from_integer(1, ctx);
  EXPECT_THROW(one / PadicNumber::zero(ctx, 4), qbern::DivisionByZero);
  const auto three = PadicNumber::from_scaled(1, 1, 4, ctx);
  const auto third = one / three;
  EXPECT_EQ(third.valuation(), -1);
  EXPECT_EQ(third.precision(), 2);
  // 27 known to a single digit leaves nothing certified after inversion.
  EXPECT_THROW(one / PadicNumber::from_scaled(1, 3, 4, ctx), qbern::PrecisionExhausted);
}

TEST(Padic, EqualsToPrecision) {
  const PadicContext ctx(3, 10);
  const auto a = PadicNumber::from_integer(1, ctx);
  const auto b = PadicNumber::from_integer(1 + 243, ctx);
  EXPECT_TRUE(qbern::equals_to_precision(a, a, 10));
  EXPECT_TRUE(qbern::equals_to_precision(a, b, 5));
  EXPECT_FALSE(qbern::equals_to_precision(a, b, 6));
  EXPECT_THROW(qbern::equals_to_precision(a, b, 11), qbern::RequestedPrecisionNotCertified);
}

TEST(Padic, DigitRoundTrip) {
  const PadicContext ctx(7, 9);
  const auto x = rat(-355, 49, ctx);
  const auto back = PadicNumber::from_digits(x.valuation(), x.unit_digits(), x.precision(), ctx);
  EXPECT_EQ(back, x);
}

class PadicProperty : public ::testing::TestWithParam<std::int64_t> {};

TEST_P(PadicProperty, UltrametricAndMultiplicative) {
  const std::int64_t p = GetParam();
  const PadicContext ctx(p, 20);
  std::mt19937_64 rng(p * 7919);
  std::uniform_int_distribution<long> dist(-100000, 100000);
  for (int trial = 0; trial < 300; ++trial) {
    long an = dist(rng), bn = dist(rng);
    long ad = std::abs(dist(rng)) + 1, bd = std::abs(dist(rng)) + 1;
    if (an == 0 || bn == 0) continue;
    const auto a = rat(an, ad, ctx);
    const auto b = rat(bn, bd, ctx);
    mpq_class sa(an, ad), sb(bn, bd);
    sa.canonicalize();
    sb.canonicalize();
    const auto prod = a * b;
    EXPECT_EQ(prod.valuation(), a.valuation() + b.valuation());
    EXPECT_TRUE(oracle::agrees(prod, sa * sb, prod.precision()));
    const auto sum = a + b;
    if (!sum.is_zero()) {
      EXPECT_GE(sum.valuation(), std::min(a.valuation(), b.valuation()));
      if (a.valuation() != b.valuation()) {
        EXPECT_EQ(sum.valuation(), std::min(a.valuation(), b.valuation()));
      }
    }
    EXPECT_TRUE(oracle::agrees(sum, sa + sb, sum.precision()));
  }
}

TEST_P(PadicProperty, RingAxiomsAreDigitExact) {
  const std::int64_t p = GetParam();
  const PadicContext ctx(p, 15);
  std::mt19937_64 rng(p);
  std::uniform_int_distribution<long> dist(1, 1000000);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = rat(dist(rng), dist(rng), ctx);
    const auto b = rat(dist(rng), dist(rng), ctx);
    const auto c = rat(dist(rng), dist(rng), ctx);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE(qbern::equals_to_precision(a * (b + c), a * b + a * c,
                                           std::min((a * (b + c)).precision(),
                                                    (a * b + a * c).precision())));
  }
}

TEST_P(PadicProperty, HigherPrecisionAgreesOnSharedDigits) {
  const std::int64_t p = GetParam();
  const PadicContext lo(p, 8), hi(p, 30);
  for (long num : {1L, -3L, 22L, 1000003L}) {
    for (long den : {7L, 11L, 2L * p, 13L}) {
      const auto a = rat(num, den, lo);
      const auto b = rat(num, den, hi);
      const auto da = a.unit_digits();
      const auto db = b.unit_digits();
      ASSERT_EQ(a.valuation(), b.valuation());
      for (std::size_t i = 0; i < da.size(); ++i) EXPECT_EQ(da[i], db[i]);
    }
  }
}

TEST_P(PadicProperty, LiftingTheExponent) {
  const std::int64_t p = GetParam();
  const PadicContext ctx(p, 20);
  const auto one = PadicNumber::from_integer(1, ctx);
  for (long q0 : {1 + p, 1 + p + p * p}) {
    const auto q = PadicNumber::from_integer(q0, ctx);
    const std::int64_t v1 = (q - one).valuation();
    for (std::int64_t m = 1; m <= 50; ++m) {
      EXPECT_EQ((q.pow(m) - one).valuation(), v1 + qbern::integer_valuation(m, p)) << m;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, PadicProperty, ::testing::Values(3, 5, 7, 11));
