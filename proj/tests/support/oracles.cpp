#include "oracles.hpp"

#include <stdexcept>

namespace oracle {

std::int64_t valuation(const mpq_class& r, std::int64_t p) {
  if (r == 0) throw std::invalid_argument("valuation of zero");
  std::int64_t v = 0;
  mpz_class num = r.get_num();
  mpz_class den = r.get_den();
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

namespace {

// a^{-1} mod m by the extended Euclidean algorithm.
mpz_class inverse_mod(mpz_class a, const mpz_class& m) {
  mpz_class r0 = m, r1 = ((a % m) + m) % m;
  mpz_class s0 = 0, s1 = 1;
  while (r1 != 0) {
    mpz_class t = r0 / r1;
    mpz_class r2 = r0 - t * r1;
    r0 = r1;
    r1 = r2;
    mpz_class s2 = s0 - t * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw std::invalid_argument("not invertible");
  return ((s0 % m) + m) % m;
}

}  // namespace

std::vector<std::int64_t> unit_digits(mpz_class num, mpz_class den, std::int64_t p,
                                      std::int64_t digits) {
  while (num != 0 && num % p == 0) num /= p;
  while (den % p == 0) den /= p;
  mpz_class m = 1;
  for (std::int64_t i = 0; i < digits; ++i) m *= p;
  mpz_class u = ((num % m) + m) % m * inverse_mod(den, m) % m;
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i < digits; ++i) {
    mpz_class d = u % p;
    out.push_back(d.get_si());
    u /= p;
  }
  return out;
}

mpz_class choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  mpz_class r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

mpq_class bracket(std::int64_t x, const mpq_class& q) {
  mpq_class qx = 1;
  mpq_class base = x >= 0 ? q : mpq_class(1 / q);
  for (std::int64_t i = 0; i < (x >= 0 ? x : -x); ++i) qx *= base;
  return (1 - qx) / (1 - q);
}

std::vector<mpq_class> carlitz_betas(std::int64_t n, const mpq_class& q) {
  std::vector<mpq_class> beta{1};
  for (std::int64_t k = 1; k <= n; ++k) {
    // q * sum_{i<=k} C(k,i) q^i beta_i - beta_k = [k = 1]
    mpq_class known = 0;
    mpq_class qi = 1;
    for (std::int64_t i = 0; i < k; ++i) {
      known += mpq_class(choose(k, i)) * qi * beta[i];
      qi *= q;
    }
    mpq_class rhs = (k == 1 ? 1 : 0) - q * known;
    beta.push_back(rhs / (q * qi - 1));
  }
  return beta;
}

mpq_class carlitz_poly(std::int64_t n, std::int64_t x, const mpq_class& q) {
  const auto beta = carlitz_betas(n, q);
  const mpq_class b = bracket(x, q);
  mpq_class qx = 1;
  for (std::int64_t i = 0; i < (x >= 0 ? x : -x); ++i) qx *= x >= 0 ? q : mpq_class(1 / q);
  mpq_class sum = 0;
  mpq_class qix = 1;
  for (std::int64_t i = 0; i <= n; ++i) {
    mpq_class bp = 1;
    for (std::int64_t j = 0; j < n - i; ++j) bp *= b;
    sum += mpq_class(choose(n, i)) * beta[i] * qix * bp;
    qix *= qx;
  }
  return sum;
}

std::vector<mpq_class> bernoulli(std::int64_t n) {
  std::vector<mpq_class> out;
  std::vector<mpq_class> a(n + 1);
  for (std::int64_t m = 0; m <= n; ++m) {
    a[m] = mpq_class(1, m + 1);
    for (std::int64_t j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
    out.push_back(a[0]);
  }
  // Akiyama-Tanigawa yields B_1 = +1/2.
  if (n >= 1) out[1] = mpq_class(-1, 2);
  return out;
}

mpq_class riemann(const std::function<mpq_class(std::int64_t)>& f, const mpq_class& q,
                  std::int64_t p, std::int64_t level) {
  std::int64_t count = 1;
  for (std::int64_t i = 0; i < level; ++i) count *= p;
  mpq_class sum = 0;
  mpq_class qx = 1;
  for (std::int64_t x = 0; x < count; ++x) {
    sum += qx * f(x);
    qx *= q;
  }
  return sum / bracket(count, q);
}

bool agrees(const qbern::PadicNumber& a, const mpq_class& r, std::int64_t t) {
  const auto b = qbern::PadicNumber::from_rational(r, a.context());
  return qbern::equals_to_precision(a, b, t);
}

}  // namespace oracle
