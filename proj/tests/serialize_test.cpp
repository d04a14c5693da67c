#include <gtest/gtest.h>

#include "qbern/carlitz.hpp"
#include "qbern/errors.hpp"
#include "qbern/serialize.hpp"

using namespace qbern;

TEST(Serialize, PadicNumber) {
  const PadicContext ctx(3, 4);
  const auto half = PadicNumber::from_rational(mpq_class(1, 2), ctx);
  const Json j = to_json(half);
  EXPECT_EQ(j.dump(), R"({"p":3,"valuation":0,"digits":[2,1,1,1],"precision":4})");
  EXPECT_EQ(padic_from_json(j, ctx), half);
  const Json zero = to_json(PadicNumber(ctx));
  EXPECT_EQ(zero["valuation"], "inf");
  EXPECT_TRUE(padic_from_json(zero, ctx).is_zero());
  EXPECT_THROW(padic_from_json(j, PadicContext(5, 4)), ConfigError);
  EXPECT_THROW(padic_from_json(Json::parse(R"({"p":3})"), ctx), ConfigError);
}

TEST(Serialize, RationalFunction) {
  CarlitzTable t(QContext::symbolic());
  const Json j = to_json(t.beta(1));
  EXPECT_EQ(j.dump(), R"({"num":["-1"],"den":["1","1"]})");
  for (std::int64_t n = 0; n <= 6; ++n) {
    const auto f = t.beta(n).symbolic();
    EXPECT_EQ(rational_function_from_json(to_json(f)), f);
  }
  EXPECT_THROW(rational_function_from_json(Json::parse(R"({"num":["1"],"den":["0"]})")),
               ConfigError);
  EXPECT_THROW(rational_function_from_json(Json::parse(R"({"num":["x"],"den":["1"]})")),
               ConfigError);
}

TEST(Serialize, Integrands) {
  const Integrand f = BernsteinProduct{{{1, 3, 2}}};
  const Json j = to_json(f);
  EXPECT_EQ(to_json(integrand_from_json(j)), j);
  EXPECT_EQ(to_json(integrand_from_json(Json::parse(R"({"type":"bracket_power","exponent":2})"))),
            to_json(Integrand{BracketPower{0, 2}}));
  EXPECT_THROW(integrand_from_json(Json::parse(R"({"type":"custom"})")), ConfigError);
}

TEST(Serialize, QSpec) {
  EXPECT_EQ(parse_q_spec("1+p", 5), 6);
  EXPECT_EQ(parse_q_spec("-3/7", 5), mpq_class(-3, 7));
  EXPECT_EQ(parse_q_spec("6/4", 5), mpq_class(3, 2));
  EXPECT_THROW(parse_q_spec("abc", 5), ConfigError);
  EXPECT_THROW(parse_q_spec("1/0", 5), ConfigError);
  EXPECT_THROW(make_context(Backend::kPadic, 5, 10, "2"), ConfigError);
}
