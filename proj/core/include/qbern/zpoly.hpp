#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace qbern {

/// Dense univariate polynomial over Z, ascending degree, no trailing zeros.
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(std::vector<mpz_class> coefficients);
  static ZPoly constant(const mpz_class& c);
  static ZPoly monomial(const mpz_class& c, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  const mpz_class& leading() const { return coeffs_.back(); }
  mpz_class coefficient(std::size_t i) const;

  /// Non-negative gcd of the coefficients; zero for the zero polynomial.
  mpz_class content() const;
  /// Divides by the content and fixes the sign so the leading coefficient is
  /// positive. Returns the signed factor that was removed.
  mpz_class make_primitive();
  ZPoly primitive_part() const;
  /// Largest coefficient magnitude.
  mpz_class max_norm() const;

  ZPoly operator-() const;
  ZPoly& operator+=(const ZPoly& other);
  ZPoly& operator-=(const ZPoly& other);
  ZPoly& operator*=(const mpz_class& c);

  friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
  friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(ZPoly a, const mpz_class& c) { return a *= c; }

  bool operator==(const ZPoly& other) const { return coeffs_ == other.coeffs_; }

  mpz_class evaluate(const mpz_class& x) const;
  mpq_class evaluate(const mpq_class& x) const;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

/// Exact quotient a / b over Z, or nullopt when b does not divide a.
std::optional<ZPoly> exact_quotient(const ZPoly& a, const ZPoly& b);

/// Primitive gcd with positive leading coefficient. gcd(0, 0) = 0.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

}  // namespace qbern
