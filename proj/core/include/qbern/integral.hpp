#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qbern/carlitz.hpp"
#include "qbern/errors.hpp"
#include "qbern/qfield.hpp"

namespace qbern {

/// x -> [x + offset]_q^exponent.
struct BracketPower {
  std::int64_t offset = 0;
  std::int64_t exponent = 0;
};

/// x -> [offset - x]_{1/q}^exponent.
struct ReflectedPower {
  std::int64_t offset = 1;
  std::int64_t exponent = 0;
};

/// One factor B_{k,n}(x,q)^m of a Bernstein product.
struct BernsteinFactor {
  std::int64_t k = 0;
  std::int64_t n = 0;
  std::int64_t m = 1;
};

/// x -> prod_i B_{k_i,n_i}(x,q)^{m_i}.
struct BernsteinProduct {
  std::vector<BernsteinFactor> factors;
};

/// Data available at a sample point x of a Riemann sum.
struct SamplePoint {
  std::int64_t x;
  const Scalar& q_power;  // q^x
  const Scalar& bracket;  // [x]_q
};

/// Arbitrary integrand; only the Riemann evaluator accepts it and no
/// convergence is promised.
struct CustomIntegrand {
  std::string name;
  std::function<Scalar(const SamplePoint&, const QContext&)> evaluate;
};

using Integrand =
    std::variant<BracketPower, ReflectedPower, BernsteinProduct, CustomIntegrand>;

std::string describe(const Integrand& f);

struct RiemannOptions {
  /// Largest p^N the evaluator will enumerate before BudgetExceeded.
  std::uint64_t max_terms = 20'000'000;
  /// Worker threads; the result does not depend on this.
  unsigned threads = 1;
};

/// (1/[p^N]_q) sum_{x=0}^{p^N-1} q^x f(x), p-adic backend only. Level 0 is
/// the single-term sum f(0).
Scalar riemann_sum(const Integrand& f, const QContext& ctx, std::int64_t level,
                   const RiemannOptions& options = {});

struct RiemannResult {
  Scalar value;
  std::int64_t level = 0;
  /// v_p(S_level - S_{level-1}).
  std::int64_t stabilization_valuation = 0;
  /// v_p(S_N - S_{N-1}) for N = 1..level.
  std::vector<std::int64_t> differences;
};

class MaxLevelExceeded : public Error {
 public:
  MaxLevelExceeded(const std::string& what, RiemannResult best)
      : Error(what), best_(std::move(best)) {}
  const RiemannResult& best() const { return best_; }

 private:
  RiemannResult best_;
};

struct IntegrateOptions {
  std::int64_t target = 8;
  /// 0 selects default_level_cap(p).
  std::int64_t level_cap = 0;
  RiemannOptions riemann;
};

/// Level cap used when none is configured: 8 for p = 3, 6 for p = 5, 5 for
/// p = 7, and the largest N with p^N <= 7^5 otherwise.
std::int64_t default_level_cap(std::int64_t prime);

/// Raises N until v_p(S_N - S_{N-1}) >= target. Throws MaxLevelExceeded
/// (carrying the last level reached) if the cap is hit first.
RiemannResult integrate(const Integrand& f, const QContext& ctx,
                        const IntegrateOptions& options = {});

/// Which sign convention to use for the bracket-power closed form.
enum class BracketPowerReading {
  kSignCorrected,  // prefactor 1/(1-q)^{m-1}; agrees with beta_{m,q}(x)
  kAsPrinted,      // prefactor 1/(q-1)^{m-1}; off by (-1)^{m+1}
};

/// int [x + y]_q^m dmu_q(y) = (1/(1-q)^{m-1})
///   sum_{l=0}^{m} C(m,l)(-1)^l q^{lx} (l+1)/(1-q^{l+1}).
/// m = 0 returns the total measure 1.
Scalar closed_bracket_power(std::int64_t m, const Argument& x, const QContext& ctx,
                            BracketPowerReading reading = BracketPowerReading::kSignCorrected);

/// int [1 - x + y]_{1/q}^n dmu_{1/q}(y) = (q^n/(q-1)^{n-1})
///   sum_{l=0}^{n} C(n,l)(-1)^l q^{lx} (l+1)/(q^{l+1}-1).
/// n = 0 returns the total measure 1.
Scalar closed_reflected_power(std::int64_t n, const Argument& x, const QContext& ctx);

/// int [1 - x]_{1/q}^n dmu_q(x) = q^2 beta_{n,1/q} + n + 1 - q, for n > 1.
Scalar closed_one_minus_x_power(std::int64_t n, CarlitzTable& table);

/// int [1 - x]_{1/q}^n dmu_q(x) by expanding (1 - [x]_q)^n into
/// sum_j C(n,j)(-1)^j beta_{j,q}. Valid for every n >= 0.
Scalar reflected_power_by_expansion(std::int64_t n, CarlitzTable& table);

enum class BernsteinRoute {
  kDirect,     // sum over beta_{k+l,q}
  kReflected,  // sum over beta_{n-l,1/q}; needs n > k + 1
};

/// int B_{k,n}(x,q) dmu_q(x).
Scalar bernstein_integral(std::int64_t k, std::int64_t n, CarlitzTable& table,
                          BernsteinRoute route);

enum class ProductRoute {
  kI,   // reflected sum over beta_{.,1/q}
  kII,  // direct sum over beta_{.,q}
};

/// int B_{k,n}(x,q) B_{k,m}(x,q) dmu_q(x). Route I needs n + m > 2k + 1.
Scalar two_product_integral(std::int64_t n, std::int64_t m, std::int64_t k,
                            CarlitzTable& table, ProductRoute route);

/// int prod_i B_{k,n_i}(x,q) dmu_q(x). Route I needs k >= 1, every n_i >= 1
/// and sum n_i > s k + 1.
Scalar bernstein_product_integral(std::int64_t k, std::span<const std::int64_t> degrees,
                                  CarlitzTable& table, ProductRoute route);

/// One factor B_{k,n}^m of a powered product with common k.
struct PowerFactor {
  std::int64_t n = 0;
  std::int64_t m = 1;
};

/// Index of the beta_{.,1/q} term in the powered reflected route.
enum class PowerIndexReading {
  kSum,        // sum_i n_i m_i - l
  kAsPrinted,  // n_1 m_1 + n_s m_s - l
};

/// int prod_i B_{k,n_i}(x,q)^{m_i} dmu_q(x). Route I needs
/// sum m_i n_i > (sum m_i) k + 1.
Scalar bernstein_power_product_integral(std::int64_t k,
                                        std::span<const PowerFactor> factors,
                                        CarlitzTable& table, ProductRoute route,
                                        PowerIndexReading reading = PowerIndexReading::kSum);

}  // namespace qbern
