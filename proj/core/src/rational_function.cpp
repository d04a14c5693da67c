#include "qbern/rational_function.hpp"

#include <utility>

#include "qbern/errors.hpp"

namespace qbern {

namespace {

// Clears denominators: returns (c, P) with P integral and c * P == coeffs.
std::pair<mpq_class, ZPoly> integral_form(const std::vector<mpq_class>& coeffs) {
  mpz_class lcm = 1;
  for (const auto& c : coeffs) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  std::vector<mpz_class> ints;
  ints.reserve(coeffs.size());
  for (const auto& c : coeffs) ints.push_back(c.get_num() * (lcm / c.get_den()));
  return {mpq_class(1, lcm), ZPoly(std::move(ints))};
}

ZPoly divide_exactly(const ZPoly& a, const ZPoly& b) {
  if (b.degree() == 0 && b.leading() == 1) return a;
  auto q = exact_quotient(a, b);
  return std::move(*q);
}

const ZPoly& unit_poly() {
  static const ZPoly one = ZPoly::constant(1);
  return one;
}

}  // namespace

RationalFunction::RationalFunction() : scale_(0), num_(unit_poly()), den_(unit_poly()) {}

RationalFunction::RationalFunction(mpq_class scale, ZPoly num, ZPoly den)
    : scale_(std::move(scale)), num_(std::move(num)), den_(std::move(den)) {}

RationalFunction RationalFunction::normalized(mpq_class scale, ZPoly num, ZPoly den) {
  if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (scale == 0 || num.is_zero()) return RationalFunction();
  scale *= mpq_class(num.make_primitive());
  scale /= mpq_class(den.make_primitive());
  if (num.degree() > 0 && den.degree() > 0) {
    ZPoly g = gcd(num, den);
    if (g.degree() > 0) {
      num = divide_exactly(num, g);
      den = divide_exactly(den, g);
    }
  }
  scale.canonicalize();
  return RationalFunction(std::move(scale), std::move(num), std::move(den));
}

RationalFunction RationalFunction::constant(const mpq_class& c) {
  if (c == 0) return RationalFunction();
  return RationalFunction(c, unit_poly(), unit_poly());
}

RationalFunction RationalFunction::constant(std::int64_t c) {
  return constant(mpq_class(static_cast<long>(c)));
}

RationalFunction RationalFunction::indeterminate() {
  return RationalFunction(1, ZPoly::monomial(1, 1), unit_poly());
}

RationalFunction RationalFunction::from_coefficients(const std::vector<mpq_class>& num,
                                                     const std::vector<mpq_class>& den) {
  auto [cn, pn] = integral_form(num);
  auto [cd, pd] = integral_form(den);
  if (pd.is_zero()) throw DivisionByZero("rational function with zero denominator");
  return normalized(cn / cd, std::move(pn), std::move(pd));
}

std::vector<mpq_class> RationalFunction::numerator() const {
  if (is_zero()) return {};
  const mpq_class factor = scale_ / mpq_class(den_.leading());
  std::vector<mpq_class> out;
  out.reserve(num_.coefficients().size());
  for (const auto& c : num_.coefficients()) {
    mpq_class v = factor * mpq_class(c);
    v.canonicalize();
    out.push_back(v);
  }
  return out;
}

std::vector<mpq_class> RationalFunction::denominator() const {
  if (is_zero()) return {mpq_class(1)};
  std::vector<mpq_class> out;
  out.reserve(den_.coefficients().size());
  for (const auto& c : den_.coefficients()) {
    mpq_class v(c, den_.leading());
    v.canonicalize();
    out.push_back(v);
  }
  return out;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction copy = *this;
  copy.scale_ = -copy.scale_;
  return copy;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DivisionByZero();
  mpq_class s = 1 / scale_;
  return RationalFunction(std::move(s), den_, num_);
}

RationalFunction RationalFunction::pow(std::int64_t exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  RationalFunction result = constant(1);
  RationalFunction base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction();
  // Cross-cancel before multiplying; both inputs are already reduced.
  const ZPoly g1 = gcd(a.num_, b.den_);
  const ZPoly g2 = gcd(b.num_, a.den_);
  ZPoly num = divide_exactly(a.num_, g1) * divide_exactly(b.num_, g2);
  ZPoly den = divide_exactly(a.den_, g2) * divide_exactly(b.den_, g1);
  return RationalFunction(a.scale_ * b.scale_, std::move(num), std::move(den));
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  return a * b.inverse();
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const ZPoly g = (a.den_ == b.den_) ? a.den_ : gcd(a.den_, b.den_);
  const ZPoly da = divide_exactly(a.den_, g);
  const ZPoly db = divide_exactly(b.den_, g);

  mpz_class common;
  mpz_lcm(common.get_mpz_t(), a.scale_.get_den().get_mpz_t(),
          b.scale_.get_den().get_mpz_t());
  const mpz_class fa = a.scale_.get_num() * (common / a.scale_.get_den());
  const mpz_class fb = b.scale_.get_num() * (common / b.scale_.get_den());
  ZPoly num = (a.num_ * db) * fa + (b.num_ * da) * fb;
  if (num.is_zero()) return RationalFunction();
  mpq_class scale(mpz_class(1), common);
  scale *= mpq_class(num.make_primitive());
  // gcd(num, da * db) = 1 already; only the shared factor g can cancel.
  ZPoly den = a.den_ * db;
  if (g.degree() > 0) {
    const ZPoly h = gcd(num, g);
    if (h.degree() > 0) {
      num = divide_exactly(num, h);
      den = divide_exactly(den, h);
    }
  }
  scale.canonicalize();
  return RationalFunction(std::move(scale), std::move(num), std::move(den));
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return a + (-b);
}

bool RationalFunction::operator==(const RationalFunction& other) const {
  return scale_ == other.scale_ && num_ == other.num_ && den_ == other.den_;
}

mpq_class RationalFunction::evaluate(const mpq_class& q) const {
  if (is_zero()) return 0;
  const mpq_class d = den_.evaluate(q);
  if (d == 0) throw DivisionByZero("rational function evaluated at a pole");
  mpq_class result = scale_ * num_.evaluate(q) / d;
  result.canonicalize();
  return result;
}

PadicNumber RationalFunction::evaluate(const PadicNumber& q) const {
  const PadicContext& ctx = q.context();
  auto horner = [&](const ZPoly& poly) {
    PadicNumber acc(ctx);
    const auto& coeffs = poly.coefficients();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      acc = acc * q + PadicNumber::from_rational(*it, 1, ctx);
    }
    return acc;
  };
  if (is_zero()) return PadicNumber(ctx);
  const PadicNumber scale = PadicNumber::from_rational(scale_, ctx);
  return scale * horner(num_) / horner(den_);
}

std::string render_polynomial(const std::vector<mpq_class>& coefficients) {
  std::string out;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const mpq_class& c = coefficients[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    const mpq_class magnitude = abs(c);
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? '-' : '+';
    }
    if (i == 0) {
      out += magnitude.get_str();
      continue;
    }
    if (magnitude != 1) {
      out += magnitude.get_str();
      out += '*';
    }
    out += 'q';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::string RationalFunction::to_string() const {
  return "(" + render_polynomial(numerator()) + ")/(" +
         render_polynomial(denominator()) + ")";
}

}  // namespace qbern
