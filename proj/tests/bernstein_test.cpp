#include <random>

#include <gtest/gtest.h>

#include "qbern/bernstein.hpp"
#include "qbern/errors.hpp"

using namespace qbern;

namespace {

QContext padic_ctx(std::int64_t p, std::int64_t k) {
  return QContext::padic(PadicContext(p, k), mpq_class(1 + p));
}

}  // namespace

TEST(Bernstein, SpecValidation) {
  EXPECT_THROW(BernsteinSpec(3, 2), DomainError);
  EXPECT_THROW(BernsteinSpec(-1, 2), DomainError);
  EXPECT_NO_THROW(BernsteinSpec(0, 0));
}

TEST(Bernstein, Endpoints) {
  const auto ctx = QContext::symbolic();
  for (std::int64_t n = 0; n <= 6; ++n) {
    for (std::int64_t k = 0; k <= n; ++k) {
      EXPECT_EQ(bernstein_eval(BernsteinSpec(k, n), std::int64_t{0}, ctx),
                ctx.constant(k == 0 ? 1 : 0));
      EXPECT_EQ(bernstein_eval(BernsteinSpec(k, n), std::int64_t{1}, ctx),
                ctx.constant(k == n ? 1 : 0));
    }
  }
}

TEST(Bernstein, DirectExpansion) {
  const auto ctx = QContext::symbolic();
  for (std::int64_t x = -2; x <= 4; ++x) {
    const Scalar b = q_bracket(x, ctx);
    EXPECT_EQ(bernstein_eval(BernsteinSpec(1, 2), x, ctx),
              ctx.constant(2) * b * (ctx.one() - b));
  }
}

TEST(Bernstein, PartitionOfUnity) {
  const auto sym = QContext::symbolic();
  const auto ctx = padic_ctx(5, 30);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> dist(1, 100000);
  for (std::int64_t n = 0; n <= 10; ++n) {
    for (std::int64_t x = -2; x <= 5; ++x) {
      Scalar sum = sym.zero();
      for (std::int64_t k = 0; k <= n; ++k) sum += bernstein_eval(BernsteinSpec(k, n), x, sym);
      EXPECT_EQ(sum, sym.one());
    }
    const auto x = PadicNumber::from_rational(mpq_class(dist(rng), dist(rng) * 5 + 1),
                                              ctx.padic_context());
    Scalar sum = ctx.zero();
    for (std::int64_t k = 0; k <= n; ++k) sum += bernstein_eval(BernsteinSpec(k, n), x, ctx);
    EXPECT_TRUE(equals_to_precision(sum.padic(), ctx.one().padic(), sum.padic().precision()));
    EXPECT_GE(sum.padic().precision(), 20);
  }
}

TEST(Bernstein, QSymmetry) {
  const auto sym = QContext::symbolic();
  const auto ctx = padic_ctx(3, 30);
  for (std::int64_t n = 0; n <= 8; ++n) {
    for (std::int64_t k = 0; k <= n; ++k) {
      for (std::int64_t x = 0; x <= 2; ++x) {
        EXPECT_EQ(bernstein_eval(BernsteinSpec(k, n), x, sym),
                  bernstein_eval(BernsteinSpec(n - k, n), 1 - x, invert_q(sym)));
        const auto a = bernstein_eval(BernsteinSpec(k, n), x, ctx).padic();
        const auto b = bernstein_eval(BernsteinSpec(n - k, n), 1 - x, invert_q(ctx)).padic();
        EXPECT_TRUE(equals_to_precision(a, b, std::min(a.precision(), b.precision())));
      }
    }
  }
}

TEST(Bernstein, ClassicalLimit) {
  const auto sym = QContext::symbolic();
  for (std::int64_t n = 0; n <= 6; ++n) {
    for (std::int64_t k = 0; k <= n; ++k) {
      for (std::int64_t x = -2; x <= 3; ++x) {
        const auto value = bernstein_eval(BernsteinSpec(k, n), x, sym).symbolic().evaluate(mpq_class(1));
        mpq_class expected(binomial(n, k));
        for (std::int64_t i = 0; i < k; ++i) expected *= x;
        for (std::int64_t i = 0; i < n - k; ++i) expected *= 1 - x;
        EXPECT_EQ(value, expected);
      }
    }
  }
}

TEST(Bernstein, Operator) {
  const auto ctx = QContext::symbolic();
  const std::int64_t x = 3;
  std::vector<Scalar> ones(5, ctx.one());
  EXPECT_EQ(bernstein_operator(ones, 4, x, ctx), ctx.one());

  const Scalar a = ctx.constant(mpq_class(2, 7));
  const Scalar b = ctx.constant(-5);
  const Scalar br = q_bracket(x, ctx);
  std::vector<Scalar> two{a, b};
  EXPECT_EQ(bernstein_operator(two, 1, x, ctx), a * (ctx.one() - br) + b * br);

  std::vector<Scalar> three{ctx.zero(), ctx.constant(mpq_class(1, 2)), ctx.one()};
  EXPECT_EQ(bernstein_operator(three, 2, x, ctx),
            ctx.constant(mpq_class(1, 2)) * bernstein_eval(BernsteinSpec(1, 2), x, ctx) +
                bernstein_eval(BernsteinSpec(2, 2), x, ctx));

  EXPECT_THROW(bernstein_operator(three, 3, x, ctx), LengthMismatch);
  EXPECT_THROW(bernstein_operator(std::vector<Scalar>{ctx.one()}, 0, x, ctx), DomainError);
}
