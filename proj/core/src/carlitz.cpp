#include "qbern/carlitz.hpp"

#include <string>

#include "qbern/errors.hpp"

namespace qbern {

namespace {

std::int64_t lte_divisor_valuation(std::int64_t m, const QContext& ctx) {
  return ctx.q_minus_one_valuation() +
         integer_valuation(mpz_class(static_cast<long>(m)),
                           ctx.padic_context().prime());
}

Scalar solve_step(std::int64_t k, std::vector<Scalar>& table,
                  const QContext& ctx, bool modified) {
  // Sum of the known lower terms of the umbral expansion.
  Scalar sum = ctx.zero();
  Scalar q_power = ctx.one();
  for (std::int64_t i = 0; i < k; ++i) {
    sum += ctx.constant(mpq_class(binomial(k, i))) * q_power *
           table[static_cast<std::size_t>(i)];
    q_power *= ctx.q();
  }
  // q_power is now q^k.
  Scalar divisor = ctx.zero();
  if (modified) {
    sum *= ctx.q();
    divisor = q_power * ctx.q() - ctx.one();
  } else {
    divisor = q_power - ctx.one();
  }
  const Scalar rhs = (k == 1) ? ctx.one() : ctx.zero();
  try {
    return (rhs - sum) / divisor;
  } catch (const PrecisionExhausted& e) {
    throw PrecisionExhausted(e.what(), k);
  }
}

}  // namespace

CarlitzTable::CarlitzTable(QContext ctx) : ctx_(std::move(ctx)) {
  beta_.push_back(ctx_.one());
  xi_.push_back(ctx_.one());
}

std::int64_t recurrence_precision_loss(std::int64_t n, std::int64_t offset,
                                       const QContext& ctx) {
  std::int64_t loss = 0;
  for (std::int64_t k = 1; k <= n; ++k) loss += lte_divisor_valuation(k + offset, ctx);
  return loss;
}

void CarlitzTable::validate_depth(std::int64_t n, std::int64_t offset) const {
  if (!ctx_.is_padic()) return;
  std::int64_t remaining = ctx_.padic_context().precision();
  for (std::int64_t k = 1; k <= n; ++k) {
    const std::int64_t loss = lte_divisor_valuation(k + offset, ctx_);
    if (remaining <= loss) {
      throw PrecisionExhausted(
          "recurrence step " + std::to_string(k) + " divides by an element of valuation " +
              std::to_string(loss) + " with only " + std::to_string(remaining) +
              " certified digits left",
          k);
    }
    remaining -= loss;
  }
}

Scalar CarlitzTable::beta(std::int64_t n) {
  if (n < 0) throw DomainError("beta index must be non-negative");
  if (static_cast<std::size_t>(n) < beta_.size()) return beta_[static_cast<std::size_t>(n)];
  validate_depth(n, 1);
  for (auto k = static_cast<std::int64_t>(beta_.size()); k <= n; ++k) {
    beta_.push_back(solve_step(k, beta_, ctx_, true));
  }
  return beta_[static_cast<std::size_t>(n)];
}

Scalar CarlitzTable::xi(std::int64_t n) {
  if (n < 0) throw DomainError("xi index must be non-negative");
  if (static_cast<std::size_t>(n) < xi_.size()) return xi_[static_cast<std::size_t>(n)];
  validate_depth(n, 0);
  for (auto k = static_cast<std::int64_t>(xi_.size()); k <= n; ++k) {
    xi_.push_back(solve_step(k, xi_, ctx_, false));
  }
  return xi_[static_cast<std::size_t>(n)];
}

CarlitzTable& CarlitzTable::inverse() {
  if (!inverse_) inverse_ = std::make_unique<CarlitzTable>(invert_q(ctx_));
  return *inverse_;
}

Scalar beta(std::int64_t n, CarlitzTable& table) { return table.beta(n); }
Scalar xi(std::int64_t n, CarlitzTable& table) { return table.xi(n); }

Scalar beta_poly(std::int64_t n, const Argument& x, CarlitzTable& table) {
  if (n < 0) throw DomainError("beta_poly degree must be non-negative");
  const QContext& ctx = table.context();
  const Scalar qx = q_pow(x, ctx);
  const Scalar bracket = q_bracket(x, ctx);
  table.beta(n);
  Scalar sum = ctx.zero();
  Scalar qix = ctx.one();
  for (std::int64_t i = 0; i <= n; ++i) {
    sum += ctx.constant(mpq_class(binomial(n, i))) * table.beta(i) * qix *
           bracket.pow(n - i);
    qix *= qx;
  }
  return sum;
}

Scalar beta_inverse_q(std::int64_t n, CarlitzTable& table) {
  return table.inverse().beta(n);
}

mpq_class classical_bernoulli(std::int64_t n) {
  if (n < 0) throw DomainError("Bernoulli index must be non-negative");
  std::vector<mpq_class> b{mpq_class(1)};
  for (std::int64_t m = 1; m <= n; ++m) {
    mpq_class acc = 0;
    for (std::int64_t k = 0; k < m; ++k) {
      acc += mpq_class(binomial(m + 1, k)) * b[static_cast<std::size_t>(k)];
    }
    mpq_class bm = -acc / mpq_class(m + 1);
    bm.canonicalize();
    b.push_back(bm);
  }
  return b.back();
}

mpq_class eval_at_one(const RationalFunction& f) {
  try {
    return f.evaluate(mpq_class(1));
  } catch (const DivisionByZero&) {
    throw PoleAtOne();
  }
}

}  // namespace qbern
