#include "qbern/qfield.hpp"

#include <algorithm>

#include "qbern/errors.hpp"

namespace qbern {

QContext::QContext(Scalar q, std::optional<PadicContext> padic, std::int64_t v1,
                   bool inverted)
    : q_(std::move(q)), padic_(std::move(padic)), v1_(v1), inverted_(inverted) {}

QContext QContext::symbolic() {
  return QContext(Scalar(RationalFunction::indeterminate()), std::nullopt, 0, false);
}

QContext QContext::padic(const PadicContext& ctx, const mpq_class& q) {
  return padic(PadicNumber::from_rational(q, ctx));
}

QContext QContext::padic(const PadicNumber& q) {
  const PadicContext& ctx = q.context();
  if (q.is_zero() || q.valuation() != 0) {
    throw ConfigError("q must be a p-adic unit");
  }
  const PadicNumber shifted = q - PadicNumber::from_integer(1, ctx);
  if (!shifted.is_zero() && shifted.valuation() < 1) {
    throw ConfigError("q must satisfy |1 - q|_p < 1");
  }
  if (shifted.is_zero()) {
    throw ConfigError("q must differ from 1 at working precision");
  }
  return QContext(Scalar(q), ctx, shifted.valuation(), false);
}

const PadicContext& QContext::padic_context() const {
  if (!padic_) throw BackendMismatch("symbolic context has no prime");
  return *padic_;
}

std::int64_t QContext::q_minus_one_valuation() const {
  if (!padic_) throw BackendMismatch("symbolic context has no prime");
  return v1_;
}

Scalar QContext::constant(const mpq_class& c) const {
  if (padic_) return Scalar(PadicNumber::from_rational(c, *padic_));
  return Scalar(RationalFunction::constant(c));
}

Scalar QContext::constant(std::int64_t c) const {
  return constant(mpq_class(static_cast<long>(c)));
}

Scalar QContext::embed(const Argument& x) const {
  if (const auto* n = std::get_if<std::int64_t>(&x)) return constant(*n);
  if (!padic_) throw NonIntegerExponentInSymbolicMode();
  return Scalar(std::get<PadicNumber>(x));
}

QContext invert_q(const QContext& ctx) {
  return QContext(ctx.one() / ctx.q(), ctx.padic_, ctx.v1_, !ctx.inverted_);
}

mpz_class binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

namespace {

const PadicNumber& padic_exponent(const Argument& x, const QContext& ctx) {
  if (!ctx.is_padic()) throw NonIntegerExponentInSymbolicMode();
  const auto& e = std::get<PadicNumber>(x);
  if (!e.is_zero() && e.valuation() < 0) {
    throw DomainError("q-power exponent must lie in Z_p");
  }
  return e;
}

// Smallest k with k * v >= bound.
std::int64_t first_index_reaching(std::int64_t bound, std::int64_t v) {
  return (bound + v - 1) / v;
}

// Binomial-series terms C(x, k)(q - 1)^(k - shift) summed for k >= shift.
// The tail past the truncation point has valuation >= cutoff.
PadicNumber binomial_series(const PadicNumber& x, const QContext& ctx, int shift) {
  const PadicContext& pctx = ctx.padic_context();
  const std::int64_t v1 = ctx.q_minus_one_valuation();
  const std::int64_t K = pctx.precision();
  const std::int64_t stop = first_index_reaching(K, v1) + shift;
  const PadicNumber one = PadicNumber::from_integer(1, pctx);
  const PadicNumber step = ctx.q().padic() - one;

  PadicNumber sum(pctx);
  PadicNumber choose = one;  // C(x, k)
  PadicNumber power = one;   // (q - 1)^(k - shift)
  for (std::int64_t k = 0; k < stop; ++k) {
    if (k > 0) {
      choose = choose * (x - PadicNumber::from_integer(k - 1, pctx)) /
               PadicNumber::from_integer(k, pctx);
      if (k > shift) power = power * step;
    }
    if (k >= shift) sum = sum + choose * power;
  }
  const std::int64_t cutoff = (stop - shift) * v1;
  return sum.with_precision(std::min(sum.precision(), cutoff));
}

}  // namespace

Scalar q_pow(const Argument& x, const QContext& ctx) {
  if (const auto* n = std::get_if<std::int64_t>(&x)) return ctx.q().pow(*n);
  return Scalar(binomial_series(padic_exponent(x, ctx), ctx, 0));
}

Scalar q_bracket(const Argument& x, const QContext& ctx) {
  if (const auto* n = std::get_if<std::int64_t>(&x)) {
    if (*n == 0) return ctx.zero();
    if (!ctx.is_padic()) {
      const Scalar one = ctx.one();
      return (one - ctx.q().pow(*n)) / (one - ctx.q());
    }
    // Geometric sum; avoids dividing by the non-unit 1 - q.
    const std::int64_t m = *n > 0 ? *n : -*n;
    Scalar sum = ctx.zero();
    Scalar power = ctx.one();
    for (std::int64_t i = 0; i < m; ++i) {
      sum += power;
      power *= ctx.q();
    }
    if (*n > 0) return sum;
    return -(ctx.q().pow(*n) * sum);
  }
  return Scalar(binomial_series(padic_exponent(x, ctx), ctx, 1));
}

Scalar reflected_bracket(const Argument& x, std::int64_t n, const QContext& ctx) {
  return (ctx.one() - q_bracket(x, ctx)).pow(n);
}

}  // namespace qbern
