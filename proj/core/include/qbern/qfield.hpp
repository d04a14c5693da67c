#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include <gmpxx.h>

#include "qbern/padic.hpp"
#include "qbern/rational_function.hpp"
#include "qbern/scalar.hpp"

namespace qbern {

/// A point at which q-brackets and q-powers are evaluated: a rational
/// integer, or (p-adic backend only) an element of Z_p.
using Argument = std::variant<std::int64_t, PadicNumber>;

/// The working backend together with the value of q.
///
/// Symbolic contexts carry q as an element of Q(q) (the indeterminate, or 1/q
/// after inversion). p-adic contexts carry a unit q with v_p(q - 1) >= 1.
class QContext {
 public:
  static QContext symbolic();
  /// Throws ConfigError unless q is a p-adic unit with v_p(q - 1) >= 1.
  static QContext padic(const PadicContext& ctx, const mpq_class& q);
  static QContext padic(const PadicNumber& q);

  Backend backend() const { return q_.backend(); }
  bool is_padic() const { return backend() == Backend::kPadic; }
  const Scalar& q() const { return q_; }
  /// Throws BackendMismatch in symbolic mode.
  const PadicContext& padic_context() const;
  /// v_p(q - 1); p-adic backend only.
  std::int64_t q_minus_one_valuation() const;
  /// Whether q has been replaced by 1/q an odd number of times.
  bool inverted() const { return inverted_; }

  Scalar constant(const mpq_class& c) const;
  Scalar constant(std::int64_t c) const;
  Scalar zero() const { return constant(0); }
  Scalar one() const { return constant(1); }
  /// The argument itself as a scalar.
  Scalar embed(const Argument& x) const;

 private:
  QContext(Scalar q, std::optional<PadicContext> padic, std::int64_t v1,
           bool inverted);
  friend QContext invert_q(const QContext& ctx);

  Scalar q_;
  std::optional<PadicContext> padic_;
  std::int64_t v1_ = 0;
  bool inverted_ = false;
};

/// q^x. Integer exponents use repeated squaring; p-adic exponents use the
/// binomial series sum_k C(x,k)(q-1)^k, truncated once k * v_p(q-1) >= K.
Scalar q_pow(const Argument& x, const QContext& ctx);

/// [x]_q = (1 - q^x) / (1 - q).
Scalar q_bracket(const Argument& x, const QContext& ctx);

/// [1 - x]_{1/q}^n, evaluated as (1 - [x]_q)^n.
Scalar reflected_bracket(const Argument& x, std::int64_t n, const QContext& ctx);

/// The same context with q replaced by 1/q.
QContext invert_q(const QContext& ctx);

/// C(n, k) as an exact integer; zero outside 0 <= k <= n.
mpz_class binomial(std::int64_t n, std::int64_t k);

}  // namespace qbern
