#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qbern/padic.hpp"
#include "qbern/zpoly.hpp"

namespace qbern {

/// An element of Q(q) kept in canonical form.
///
/// Internally scale * N(q) / D(q) with N, D primitive integer polynomials with
/// positive leading coefficients and gcd(N, D) = 1. The public view is the
/// equivalent ratio of rational-coefficient polynomials with a monic
/// denominator. Two values are equal iff their canonical forms coincide.
class RationalFunction {
 public:
  /// Zero.
  RationalFunction();
  static RationalFunction constant(const mpq_class& c);
  static RationalFunction constant(std::int64_t c);
  /// The indeterminate q.
  static RationalFunction indeterminate();
  /// num / den from ascending rational coefficients. Throws DivisionByZero
  /// for a zero denominator.
  static RationalFunction from_coefficients(const std::vector<mpq_class>& num,
                                            const std::vector<mpq_class>& den);

  bool is_zero() const { return scale_ == 0; }
  /// Canonical numerator, ascending degree.
  std::vector<mpq_class> numerator() const;
  /// Canonical monic denominator, ascending degree.
  std::vector<mpq_class> denominator() const;
  std::int64_t numerator_degree() const { return num_.degree(); }
  std::int64_t denominator_degree() const { return den_.degree(); }

  RationalFunction operator-() const;
  RationalFunction pow(std::int64_t exponent) const;
  RationalFunction inverse() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

  bool operator==(const RationalFunction& other) const;

  /// Value at a rational point. Throws DivisionByZero at a pole.
  mpq_class evaluate(const mpq_class& q) const;
  /// Value at a p-adic point, with the precision loss of the final division.
  PadicNumber evaluate(const PadicNumber& q) const;

  /// Single-line "(num)/(den)" rendering, ascending-degree terms.
  std::string to_string() const;

 private:
  RationalFunction(mpq_class scale, ZPoly num, ZPoly den);
  static RationalFunction normalized(mpq_class scale, ZPoly num, ZPoly den);

  mpq_class scale_;
  ZPoly num_;
  ZPoly den_;
};

/// Renders an ascending coefficient list as "c0+c1*q+c2*q^2".
std::string render_polynomial(const std::vector<mpq_class>& coefficients);

}  // namespace qbern
