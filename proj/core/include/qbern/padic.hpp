#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace qbern {

inline constexpr std::int64_t kInfiniteValuation =
    std::numeric_limits<std::int64_t>::max();

/// Deterministic primality test for the small primes used as p.
bool is_prime(std::int64_t n);

/// Largest e with p^e | n; kInfiniteValuation for n == 0.
std::int64_t integer_valuation(const mpz_class& n, std::int64_t p);

/// Prime p and working precision K shared by a family of p-adic numbers.
///
/// Cheap to copy. Powers of p are cached up to a bound proportional to K.
class PadicContext {
 public:
  /// Throws ConfigError unless prime is an odd prime and precision >= 1.
  PadicContext(std::int64_t prime, std::int64_t precision);

  std::int64_t prime() const;
  std::int64_t precision() const;

  /// p^e for e >= 0. Returns a cached reference when available, otherwise
  /// computes into `scratch` and returns that.
  const mpz_class& power(std::int64_t e, mpz_class& scratch) const;
  mpz_class power(std::int64_t e) const;

  bool operator==(const PadicContext& other) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// An element of Q_p known modulo p^A, stored as p^v * u with u a unit.
///
/// Zero is the unique value with valuation kInfiniteValuation; it still
/// carries the absolute precision A to which it is known to vanish.
class PadicNumber {
 public:
  /// Exact zero at the context's working precision.
  explicit PadicNumber(const PadicContext& ctx);

  /// num / den embedded with K digits of absolute precision, or K digits of
  /// relative precision when the valuation is positive.
  static PadicNumber from_rational(const mpz_class& num, const mpz_class& den,
                                   const PadicContext& ctx);
  static PadicNumber from_rational(const mpq_class& value,
                                   const PadicContext& ctx);
  static PadicNumber from_integer(std::int64_t value, const PadicContext& ctx);

  /// value * p^valuation known modulo p^precision. `value` need not be a unit.
  static PadicNumber from_scaled(const mpz_class& value, std::int64_t valuation,
                                 std::int64_t precision,
                                 const PadicContext& ctx);

  /// Zero known to vanish modulo p^precision.
  static PadicNumber zero(const PadicContext& ctx, std::int64_t precision);

  /// Rebuilds a number from little-endian unit digits. The digit count must
  /// equal precision - valuation.
  static PadicNumber from_digits(std::int64_t valuation,
                                 std::span<const std::int64_t> digits,
                                 std::int64_t precision,
                                 const PadicContext& ctx);

  const PadicContext& context() const { return ctx_; }
  bool is_zero() const { return valuation_ == kInfiniteValuation; }
  std::int64_t valuation() const { return valuation_; }
  std::int64_t precision() const { return precision_; }
  /// Number of certified unit digits; zero for zero.
  std::int64_t relative_precision() const;
  const mpz_class& unit() const { return unit_; }
  /// Base-p digits of the unit, p^0 digit first.
  std::vector<std::int64_t> unit_digits() const;

  /// Same value reduced to a lower absolute precision.
  PadicNumber with_precision(std::int64_t precision) const;

  PadicNumber operator-() const;
  PadicNumber pow(std::int64_t exponent) const;

  /// Structural equality: same valuation, unit and certified precision.
  bool operator==(const PadicNumber& other) const;

 private:
  PadicNumber(PadicContext ctx, std::int64_t valuation, std::int64_t precision,
              mpz_class unit);

  friend PadicNumber add(const PadicNumber&, const PadicNumber&);
  friend PadicNumber sub(const PadicNumber&, const PadicNumber&);
  friend PadicNumber mul(const PadicNumber&, const PadicNumber&);
  friend PadicNumber div(const PadicNumber&, const PadicNumber&);

  PadicContext ctx_;
  std::int64_t valuation_;
  std::int64_t precision_;
  mpz_class unit_;  // 0 < unit_ < p^(precision_ - valuation_), p does not divide it
};

enum class ArithOp { kAdd, kSub, kMul };

PadicNumber add(const PadicNumber& a, const PadicNumber& b);
PadicNumber sub(const PadicNumber& a, const PadicNumber& b);
PadicNumber mul(const PadicNumber& a, const PadicNumber& b);
/// Throws DivisionByZero, or PrecisionExhausted if the quotient's absolute
/// precision would be <= 0.
PadicNumber div(const PadicNumber& a, const PadicNumber& b);
PadicNumber arith(const PadicNumber& a, const PadicNumber& b, ArithOp op);

inline PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) { return add(a, b); }
inline PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return sub(a, b); }
inline PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) { return mul(a, b); }
inline PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return div(a, b); }

inline std::int64_t valuation(const PadicNumber& a) { return a.valuation(); }

/// True iff v_p(a - b) >= t. Throws RequestedPrecisionNotCertified when t
/// exceeds the certified precision of either operand.
bool equals_to_precision(const PadicNumber& a, const PadicNumber& b,
                         std::int64_t t);

/// Largest t with v_p(a - b) >= t that both operands certify.
std::int64_t agreement_valuation(const PadicNumber& a, const PadicNumber& b);

}  // namespace qbern
