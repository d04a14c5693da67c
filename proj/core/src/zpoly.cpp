#include "qbern/zpoly.hpp"

#include <algorithm>
#include <utility>

namespace qbern {

ZPoly::ZPoly(std::vector<mpz_class> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

ZPoly ZPoly::constant(const mpz_class& c) { return ZPoly({c}); }

ZPoly ZPoly::monomial(const mpz_class& c, std::size_t degree) {
  std::vector<mpz_class> coeffs(degree + 1);
  coeffs[degree] = c;
  return ZPoly(std::move(coeffs));
}

void ZPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class ZPoly::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : mpz_class(0);
}

mpz_class ZPoly::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

mpz_class ZPoly::make_primitive() {
  if (is_zero()) return 0;
  mpz_class g = content();
  if (leading() < 0) g = -g;
  if (g != 1) {
    for (auto& c : coeffs_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return g;
}

ZPoly ZPoly::primitive_part() const {
  ZPoly copy = *this;
  copy.make_primitive();
  return copy;
}

mpz_class ZPoly::max_norm() const {
  mpz_class best = 0;
  for (const auto& c : coeffs_) {
    if (mpz_cmpabs(c.get_mpz_t(), best.get_mpz_t()) > 0) best = abs(c);
  }
  return best;
}

ZPoly ZPoly::operator-() const {
  ZPoly copy = *this;
  for (auto& c : copy.coeffs_) c = -c;
  return copy;
}

ZPoly& ZPoly::operator+=(const ZPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

ZPoly& ZPoly::operator*=(const mpz_class& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                 b.coeffs_[j].get_mpz_t());
    }
  }
  return ZPoly(std::move(out));
}

mpz_class ZPoly::evaluate(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

mpq_class ZPoly::evaluate(const mpq_class& x) const {
  // Homogenized Horner: sum c_i n^i d^(deg - i), divided by d^deg.
  const mpz_class& n = x.get_num();
  const mpz_class& d = x.get_den();
  mpz_class acc = 0;
  mpz_class dpow = 1;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= n;
    acc += *it * dpow;
    dpow *= d;
  }
  if (is_zero()) return 0;
  mpz_class denominator;
  mpz_pow_ui(denominator.get_mpz_t(), d.get_mpz_t(),
             static_cast<unsigned long>(degree()));
  mpq_class result(acc, denominator);
  result.canonicalize();
  return result;
}

std::optional<ZPoly> exact_quotient(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return ZPoly();
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<mpz_class> rem = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  std::vector<mpz_class> quot(rem.size() - db);
  mpz_class t;
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i] == 0) continue;
    if (!mpz_divisible_p(rem[i].get_mpz_t(), bc[db].get_mpz_t())) return std::nullopt;
    mpz_divexact(t.get_mpz_t(), rem[i].get_mpz_t(), bc[db].get_mpz_t());
    const std::size_t shift = i - db;
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(rem[shift + j].get_mpz_t(), t.get_mpz_t(), bc[j].get_mpz_t());
    }
    quot[shift] = t;
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (rem[i] != 0) return std::nullopt;
  }
  return ZPoly(std::move(quot));
}

namespace {

ZPoly pseudo_remainder(const ZPoly& a, const ZPoly& b) {
  std::vector<mpz_class> rem = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  const mpz_class& lead = bc[db];
  for (std::size_t i = rem.size(); i-- > db;) {
    const mpz_class t = rem[i];
    for (auto& c : rem) c *= lead;
    if (t == 0) continue;
    const std::size_t shift = i - db;
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(rem[shift + j].get_mpz_t(), t.get_mpz_t(), bc[j].get_mpz_t());
    }
  }
  rem.resize(std::min(rem.size(), db));
  return ZPoly(std::move(rem));
}

ZPoly primitive_prs_gcd(ZPoly a, ZPoly b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    ZPoly r = pseudo_remainder(a, b);
    r.make_primitive();
    a = std::move(b);
    b = std::move(r);
  }
  a.make_primitive();
  return a;
}

// Reconstructs a polynomial from its value at xi using balanced xi-adic digits.
ZPoly interpolate(mpz_class value, const mpz_class& xi) {
  std::vector<mpz_class> coeffs;
  const mpz_class half = xi / 2;
  mpz_class digit;
  while (value != 0) {
    mpz_fdiv_r(digit.get_mpz_t(), value.get_mpz_t(), xi.get_mpz_t());
    if (digit > half) digit -= xi;
    coeffs.push_back(digit);
    value -= digit;
    mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), xi.get_mpz_t());
  }
  return ZPoly(std::move(coeffs));
}

}  // namespace

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  ZPoly pa = a.primitive_part();
  ZPoly pb = b.primitive_part();
  if (pa.degree() == 0 || pb.degree() == 0) return ZPoly::constant(1);
  if (pa == pb) return pa;

  // Heuristic gcd: evaluate at a large integer, take the integer gcd, and
  // read the candidate back off its balanced digits. A candidate that
  // divides both inputs is the gcd once xi exceeds 2 * min norm + 1.
  mpz_class xi = 2 * std::min(pa.max_norm(), pb.max_norm()) + 29;
  const std::int64_t max_degree = std::max(pa.degree(), pb.degree());
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (static_cast<std::int64_t>(mpz_sizeinbase(xi.get_mpz_t(), 2)) * max_degree >
        400000) {
      break;
    }
    mpz_class g;
    const mpz_class va = pa.evaluate(xi);
    const mpz_class vb = pb.evaluate(xi);
    mpz_gcd(g.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
    ZPoly candidate = interpolate(g, xi);
    candidate.make_primitive();
    if (!candidate.is_zero() && exact_quotient(pa, candidate) &&
        exact_quotient(pb, candidate)) {
      return candidate;
    }
    xi = xi * 73794 / 27011;
  }
  return primitive_prs_gcd(std::move(pa), std::move(pb));
}

}  // namespace qbern
