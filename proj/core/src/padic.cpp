#include "qbern/padic.hpp"

#include <algorithm>
#include <string>

#include "qbern/errors.hpp"

namespace qbern {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::int64_t integer_valuation(const mpz_class& n, std::int64_t p) {
  if (n == 0) return kInfiniteValuation;
  mpz_class rest;
  mpz_class prime(static_cast<long>(p));
  return static_cast<std::int64_t>(
      mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

struct PadicContext::Data {
  std::int64_t prime;
  std::int64_t precision;
  std::vector<mpz_class> powers;
};

PadicContext::PadicContext(std::int64_t prime, std::int64_t precision) {
  if (prime < 3 || !is_prime(prime)) {
    throw ConfigError("p must be an odd prime, got " + std::to_string(prime));
  }
  if (precision < 1) {
    throw ConfigError("working precision must be positive");
  }
  auto data = std::make_shared<Data>();
  data->prime = prime;
  data->precision = precision;
  const std::int64_t bound = 4 * precision + 256;
  data->powers.reserve(static_cast<std::size_t>(bound));
  mpz_class power = 1;
  for (std::int64_t e = 0; e < bound; ++e) {
    data->powers.push_back(power);
    power *= static_cast<long>(prime);
  }
  data_ = std::move(data);
}

std::int64_t PadicContext::prime() const { return data_->prime; }
std::int64_t PadicContext::precision() const { return data_->precision; }

const mpz_class& PadicContext::power(std::int64_t e, mpz_class& scratch) const {
  if (e >= 0 && static_cast<std::size_t>(e) < data_->powers.size()) {
    return data_->powers[static_cast<std::size_t>(e)];
  }
  mpz_ui_pow_ui(scratch.get_mpz_t(), static_cast<unsigned long>(data_->prime),
                static_cast<unsigned long>(e));
  return scratch;
}

mpz_class PadicContext::power(std::int64_t e) const {
  mpz_class scratch;
  return power(e, scratch);
}

bool PadicContext::operator==(const PadicContext& other) const {
  return data_ == other.data_ || (prime() == other.prime() &&
                                  precision() == other.precision());
}

namespace {

void require_same_context(const PadicNumber& a, const PadicNumber& b) {
  if (!(a.context() == b.context())) {
    throw ContextMismatch("p-adic operands belong to different contexts");
  }
}

// Effective valuation for precision bookkeeping: a zero known modulo p^A has
// valuation at least A.
std::int64_t effective_valuation(const PadicNumber& a) {
  return a.is_zero() ? a.precision() : a.valuation();
}

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  if (a == kInfiniteValuation || b == kInfiniteValuation) return kInfiniteValuation;
  return a + b;
}

}  // namespace

PadicNumber::PadicNumber(const PadicContext& ctx)
    : ctx_(ctx), valuation_(kInfiniteValuation), precision_(ctx.precision()) {}

PadicNumber::PadicNumber(PadicContext ctx, std::int64_t valuation,
                         std::int64_t precision, mpz_class unit)
    : ctx_(std::move(ctx)),
      valuation_(valuation),
      precision_(precision),
      unit_(std::move(unit)) {}

PadicNumber PadicNumber::zero(const PadicContext& ctx, std::int64_t precision) {
  return PadicNumber(ctx, kInfiniteValuation, precision, 0);
}

PadicNumber PadicNumber::from_scaled(const mpz_class& value,
                                     std::int64_t valuation,
                                     std::int64_t precision,
                                     const PadicContext& ctx) {
  if (value == 0) return zero(ctx, precision);
  mpz_class unit;
  mpz_class prime(static_cast<long>(ctx.prime()));
  const auto removed = static_cast<std::int64_t>(
      mpz_remove(unit.get_mpz_t(), value.get_mpz_t(), prime.get_mpz_t()));
  const std::int64_t v = valuation + removed;
  if (v >= precision) return zero(ctx, precision);
  mpz_class scratch;
  const mpz_class& modulus = ctx.power(precision - v, scratch);
  mpz_fdiv_r(unit.get_mpz_t(), unit.get_mpz_t(), modulus.get_mpz_t());
  return PadicNumber(ctx, v, precision, std::move(unit));
}

PadicNumber PadicNumber::from_rational(const mpz_class& num,
                                       const mpz_class& den,
                                       const PadicContext& ctx) {
  if (den == 0) throw DivisionByZero("from_rational with zero denominator");
  if (num == 0) return zero(ctx, ctx.precision());
  const std::int64_t p = ctx.prime();
  mpz_class prime(static_cast<long>(p));
  mpz_class n, d;
  const auto vn = static_cast<std::int64_t>(
      mpz_remove(n.get_mpz_t(), num.get_mpz_t(), prime.get_mpz_t()));
  const auto vd = static_cast<std::int64_t>(
      mpz_remove(d.get_mpz_t(), den.get_mpz_t(), prime.get_mpz_t()));
  const std::int64_t v = vn - vd;
  const std::int64_t precision = std::max(ctx.precision(), v + ctx.precision());
  mpz_class scratch;
  const mpz_class& modulus = ctx.power(precision - v, scratch);
  mpz_class inverse;
  mpz_invert(inverse.get_mpz_t(), d.get_mpz_t(), modulus.get_mpz_t());
  mpz_class unit = n * inverse;
  mpz_fdiv_r(unit.get_mpz_t(), unit.get_mpz_t(), modulus.get_mpz_t());
  return PadicNumber(ctx, v, precision, std::move(unit));
}

PadicNumber PadicNumber::from_rational(const mpq_class& value,
                                       const PadicContext& ctx) {
  return from_rational(value.get_num(), value.get_den(), ctx);
}

PadicNumber PadicNumber::from_integer(std::int64_t value,
                                      const PadicContext& ctx) {
  return from_rational(mpz_class(static_cast<long>(value)), 1, ctx);
}

PadicNumber PadicNumber::from_digits(std::int64_t valuation,
                                     std::span<const std::int64_t> digits,
                                     std::int64_t precision,
                                     const PadicContext& ctx) {
  if (valuation == kInfiniteValuation) {
    if (!digits.empty()) throw ConfigError("zero carries no digits");
    return zero(ctx, precision);
  }
  if (static_cast<std::int64_t>(digits.size()) != precision - valuation) {
    throw ConfigError("digit count must equal precision - valuation");
  }
  mpz_class unit = 0;
  const long p = static_cast<long>(ctx.prime());
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it < 0 || *it >= ctx.prime()) throw ConfigError("digit out of range");
    unit = unit * p + static_cast<long>(*it);
  }
  if (digits.empty() || digits.front() == 0) {
    throw ConfigError("leading unit digit must be nonzero");
  }
  return PadicNumber(ctx, valuation, precision, std::move(unit));
}

std::int64_t PadicNumber::relative_precision() const {
  return is_zero() ? 0 : precision_ - valuation_;
}

std::vector<std::int64_t> PadicNumber::unit_digits() const {
  std::vector<std::int64_t> digits;
  if (is_zero()) return digits;
  const auto count = static_cast<std::size_t>(relative_precision());
  digits.reserve(count);
  mpz_class rest = unit_;
  mpz_class digit;
  const unsigned long p = static_cast<unsigned long>(ctx_.prime());
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned long d = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    digits.push_back(static_cast<std::int64_t>(d));
  }
  return digits;
}

PadicNumber PadicNumber::with_precision(std::int64_t precision) const {
  if (precision >= precision_) return *this;
  if (is_zero()) return zero(ctx_, precision);
  return from_scaled(unit_, valuation_, precision, ctx_);
}

PadicNumber PadicNumber::operator-() const {
  if (is_zero()) return *this;
  mpz_class scratch;
  const mpz_class& modulus = ctx_.power(relative_precision(), scratch);
  return PadicNumber(ctx_, valuation_, precision_, modulus - unit_);
}

PadicNumber PadicNumber::pow(std::int64_t exponent) const {
  if (exponent < 0) {
    return div(PadicNumber::from_integer(1, ctx_), pow(-exponent));
  }
  PadicNumber result = PadicNumber::from_integer(1, ctx_);
  PadicNumber base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, base);
    exponent >>= 1;
    if (exponent > 0) base = mul(base, base);
  }
  return result;
}

bool PadicNumber::operator==(const PadicNumber& other) const {
  return ctx_ == other.ctx_ && valuation_ == other.valuation_ &&
         precision_ == other.precision_ && unit_ == other.unit_;
}

PadicNumber add(const PadicNumber& a, const PadicNumber& b) {
  require_same_context(a, b);
  const std::int64_t precision = std::min(a.precision_, b.precision_);
  if (a.is_zero()) return b.with_precision(precision);
  if (b.is_zero()) return a.with_precision(precision);
  const std::int64_t v = std::min(a.valuation_, b.valuation_);
  if (v >= precision) return PadicNumber::zero(a.ctx_, precision);
  mpz_class scratch;
  mpz_class sum = a.unit_ * a.ctx_.power(a.valuation_ - v, scratch);
  sum += b.unit_ * b.ctx_.power(b.valuation_ - v, scratch);
  return PadicNumber::from_scaled(sum, v, precision, a.ctx_);
}

PadicNumber sub(const PadicNumber& a, const PadicNumber& b) {
  return add(a, -b);
}

PadicNumber mul(const PadicNumber& a, const PadicNumber& b) {
  require_same_context(a, b);
  const std::int64_t precision =
      std::min(saturating_add(a.precision_, effective_valuation(b)),
               saturating_add(b.precision_, effective_valuation(a)));
  if (a.is_zero() || b.is_zero()) return PadicNumber::zero(a.ctx_, precision);
  const std::int64_t v = a.valuation_ + b.valuation_;
  mpz_class product = a.unit_ * b.unit_;
  mpz_class scratch;
  const mpz_class& modulus = a.ctx_.power(precision - v, scratch);
  mpz_fdiv_r(product.get_mpz_t(), product.get_mpz_t(), modulus.get_mpz_t());
  return PadicNumber(a.ctx_, v, precision, std::move(product));
}

PadicNumber div(const PadicNumber& a, const PadicNumber& b) {
  require_same_context(a, b);
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero()) {
    const std::int64_t precision = a.precision_ - b.valuation_;
    if (precision <= 0) {
      throw PrecisionExhausted("quotient has no certified digits left");
    }
    return PadicNumber::zero(a.ctx_, precision);
  }
  const std::int64_t v = a.valuation_ - b.valuation_;
  const std::int64_t relative =
      std::min(a.relative_precision(), b.relative_precision());
  const std::int64_t precision = v + relative;
  if (precision <= 0) {
    throw PrecisionExhausted("quotient has no certified digits left");
  }
  mpz_class scratch;
  const mpz_class& modulus = a.ctx_.power(relative, scratch);
  mpz_class inverse;
  mpz_invert(inverse.get_mpz_t(), b.unit_.get_mpz_t(), modulus.get_mpz_t());
  mpz_class quotient = a.unit_ * inverse;
  mpz_fdiv_r(quotient.get_mpz_t(), quotient.get_mpz_t(), modulus.get_mpz_t());
  return PadicNumber(a.ctx_, v, precision, std::move(quotient));
}

PadicNumber arith(const PadicNumber& a, const PadicNumber& b, ArithOp op) {
  switch (op) {
    case ArithOp::kAdd:
      return add(a, b);
    case ArithOp::kSub:
      return sub(a, b);
    case ArithOp::kMul:
      return mul(a, b);
  }
  return add(a, b);
}

bool equals_to_precision(const PadicNumber& a, const PadicNumber& b,
                         std::int64_t t) {
  if (t > std::min(a.precision(), b.precision())) {
    throw RequestedPrecisionNotCertified(
        "requested agreement to p^" + std::to_string(t) +
        " exceeds certified precision " +
        std::to_string(std::min(a.precision(), b.precision())));
  }
  const PadicNumber diff = sub(a, b);
  return diff.is_zero() || diff.valuation() >= t;
}

std::int64_t agreement_valuation(const PadicNumber& a, const PadicNumber& b) {
  const PadicNumber diff = sub(a, b);
  return diff.is_zero() ? diff.precision() : diff.valuation();
}

}  // namespace qbern
