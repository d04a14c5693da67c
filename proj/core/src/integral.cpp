#include "qbern/integral.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "qbern/bernstein.hpp"

namespace qbern {

std::string describe(const Integrand& f) {
  std::ostringstream out;
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, BracketPower>) {
          out << "[x+" << g.offset << "]_q^" << g.exponent;
        } else if constexpr (std::is_same_v<T, ReflectedPower>) {
          out << "[" << g.offset << "-x]_{1/q}^" << g.exponent;
        } else if constexpr (std::is_same_v<T, BernsteinProduct>) {
          bool first = true;
          for (const auto& factor : g.factors) {
            if (!first) out << '*';
            first = false;
            out << "B_{" << factor.k << ',' << factor.n << "}^" << factor.m;
          }
          if (first) out << '1';
        } else {
          out << "custom:" << g.name;
        }
      },
      f);
  return out.str();
}

namespace {

using PointEvaluator = std::function<Scalar(std::int64_t, const Scalar&, const Scalar&)>;

// Binds the integrand's constants to the context once per sum.
PointEvaluator prepare(const Integrand& f, const QContext& ctx) {
  return std::visit(
      [&](const auto& g) -> PointEvaluator {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, BracketPower>) {
          if (g.exponent < 0) throw DomainError("negative exponent in integrand");
          // [x + c]_q = [c]_q + q^c [x]_q
          const Scalar shift = q_bracket(g.offset, ctx);
          const Scalar scale = q_pow(g.offset, ctx);
          const std::int64_t m = g.exponent;
          return [shift, scale, m](std::int64_t, const Scalar&, const Scalar& bx) {
            return (shift + scale * bx).pow(m);
          };
        } else if constexpr (std::is_same_v<T, ReflectedPower>) {
          if (g.exponent < 0) throw DomainError("negative exponent in integrand");
          // [c - x]_{1/q} = q^{1-c} [c]_q q^x - q [x]_q
          const Scalar a = q_pow(1 - g.offset, ctx) * q_bracket(g.offset, ctx);
          const Scalar b = ctx.q();
          const std::int64_t n = g.exponent;
          return [a, b, n](std::int64_t, const Scalar& qx, const Scalar& bx) {
            return (a * qx - b * bx).pow(n);
          };
        } else if constexpr (std::is_same_v<T, BernsteinProduct>) {
          std::vector<std::pair<BernsteinSpec, std::int64_t>> specs;
          for (const auto& factor : g.factors) {
            if (factor.m < 0) throw DomainError("negative Bernstein power");
            specs.emplace_back(BernsteinSpec(factor.k, factor.n), factor.m);
          }
          return [specs, ctx](std::int64_t, const Scalar&, const Scalar& bx) {
            Scalar product = ctx.one();
            for (const auto& [spec, m] : specs) {
              product *= bernstein_from_bracket(spec, bx, ctx).pow(m);
            }
            return product;
          };
        } else {
          auto evaluate = g.evaluate;
          return [evaluate, ctx](std::int64_t x, const Scalar& qx, const Scalar& bx) {
            return evaluate(SamplePoint{x, qx, bx}, ctx);
          };
        }
      },
      f);
}

struct Seed {
  Scalar q_power;  // q^x
  Scalar bracket;  // [x]_q
};

// (q^x, [x]_q) by binary doubling: [2a] = [a](1 + q^a), [a+1] = [a] + q^a.
// Uses only ring operations on units, so the result is bit-identical to
// accumulating one term at a time.
Seed geometric_seed(std::uint64_t x, const QContext& ctx) {
  Seed seed{ctx.one(), ctx.zero()};
  if (x == 0) return seed;
  int top = 63;
  while (((x >> top) & 1U) == 0) --top;
  for (int bit = top; bit >= 0; --bit) {
    seed.bracket = seed.bracket * (ctx.one() + seed.q_power);
    seed.q_power = seed.q_power * seed.q_power;
    if ((x >> bit) & 1U) {
      seed.bracket = seed.bracket + seed.q_power;
      seed.q_power = seed.q_power * ctx.q();
    }
  }
  return seed;
}

Scalar block_sum(const PointEvaluator& evaluate, const QContext& ctx,
                 std::uint64_t begin, std::uint64_t end) {
  Seed seed = geometric_seed(begin, ctx);
  Scalar sum = ctx.zero();
  for (std::uint64_t x = begin; x < end; ++x) {
    sum += seed.q_power * evaluate(static_cast<std::int64_t>(x), seed.q_power, seed.bracket);
    seed.bracket += seed.q_power;
    seed.q_power *= ctx.q();
  }
  return sum;
}

}  // namespace

Scalar riemann_sum(const Integrand& f, const QContext& ctx, std::int64_t level,
                   const RiemannOptions& options) {
  if (!ctx.is_padic()) throw BackendMismatch("Riemann sums need the p-adic backend");
  if (level < 0) throw DomainError("Riemann level must be non-negative");
  const auto p = static_cast<std::uint64_t>(ctx.padic_context().prime());
  std::uint64_t terms = 1;
  for (std::int64_t i = 0; i < level; ++i) {
    if (terms > options.max_terms / p) {
      throw BudgetExceeded("level " + std::to_string(level) +
                           " exceeds the Riemann term budget of " +
                           std::to_string(options.max_terms));
    }
    terms *= p;
  }

  const PointEvaluator evaluate = prepare(f, ctx);
  const unsigned workers = static_cast<unsigned>(
      std::clamp<std::uint64_t>(options.threads, 1, std::max<std::uint64_t>(1, terms / 256)));

  Scalar total = ctx.zero();
  if (workers == 1) {
    total = block_sum(evaluate, ctx, 0, terms);
  } else {
    std::vector<std::optional<Scalar>> partial(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (terms + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(terms, w * chunk);
      const std::uint64_t end = std::min<std::uint64_t>(terms, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          partial[w] = block_sum(evaluate, ctx, begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (const auto& s : partial) total += *s;
  }
  return total / geometric_seed(terms, ctx).bracket;
}

std::int64_t default_level_cap(std::int64_t prime) {
  switch (prime) {
    case 3:
      return 8;
    case 5:
      return 6;
    case 7:
      return 5;
    default:
      break;
  }
  std::int64_t level = 0;
  std::int64_t terms = 1;
  while (terms * prime <= 16807) {
    terms *= prime;
    ++level;
  }
  return std::max<std::int64_t>(level, 1);
}

RiemannResult integrate(const Integrand& f, const QContext& ctx,
                        const IntegrateOptions& options) {
  if (!ctx.is_padic()) throw BackendMismatch("integration needs the p-adic backend");
  const std::int64_t cap = options.level_cap > 0
                               ? options.level_cap
                               : default_level_cap(ctx.padic_context().prime());
  RiemannResult result{riemann_sum(f, ctx, 0, options.riemann), 0, 0, {}};
  for (std::int64_t level = 1; level <= cap; ++level) {
    Scalar next = riemann_sum(f, ctx, level, options.riemann);
    const std::int64_t d = agreement_valuation(next.padic(), result.value.padic());
    result.value = std::move(next);
    result.level = level;
    result.stabilization_valuation = d;
    result.differences.push_back(d);
    if (d >= options.target) return result;
  }
  throw MaxLevelExceeded("no stabilization to valuation " + std::to_string(options.target) +
                             " by level " + std::to_string(cap) + " (best " +
                             std::to_string(result.stabilization_valuation) + ")",
                         std::move(result));
}

namespace {

Scalar int_constant(const QContext& ctx, const mpz_class& c) {
  return ctx.constant(mpq_class(c));
}

Scalar sign(std::int64_t exponent, const QContext& ctx) {
  return ctx.constant(exponent % 2 == 0 ? 1 : -1);
}

// prefactor * sum_{l=0}^{t} C(t,l)(-1)^{t+l} [S - l + 1 - q + q^2 beta_{index(l),1/q}]
Scalar reflected_route(const mpz_class& prefactor, std::int64_t t, std::int64_t total,
                       const std::function<std::int64_t(std::int64_t)>& index,
                       CarlitzTable& table) {
  const QContext& ctx = table.context();
  const Scalar& q = ctx.q();
  const Scalar q2 = q * q;
  CarlitzTable& inverse = table.inverse();
  Scalar sum = ctx.zero();
  for (std::int64_t l = 0; l <= t; ++l) {
    const Scalar bracket =
        ctx.constant(total - l + 1) - q + q2 * inverse.beta(index(l));
    sum += int_constant(ctx, binomial(t, l)) * sign(t + l, ctx) * bracket;
  }
  return int_constant(ctx, prefactor) * sum;
}

// prefactor * sum_{l=0}^{S-t} C(S-t,l)(-1)^l beta_{t+l,q}
Scalar direct_route(const mpz_class& prefactor, std::int64_t t, std::int64_t total,
                    CarlitzTable& table) {
  const QContext& ctx = table.context();
  const std::int64_t span = total - t;
  table.beta(total);
  Scalar sum = ctx.zero();
  for (std::int64_t l = 0; l <= span; ++l) {
    sum += int_constant(ctx, binomial(span, l)) * sign(l, ctx) * table.beta(t + l);
  }
  return int_constant(ctx, prefactor) * sum;
}

}  // namespace

Scalar closed_bracket_power(std::int64_t m, const Argument& x, const QContext& ctx,
                            BracketPowerReading reading) {
  if (m < 0) throw DomainError("exponent must be non-negative");
  if (m == 0) return ctx.one();
  const Scalar one = ctx.one();
  const Scalar& q = ctx.q();
  const Scalar qx = q_pow(x, ctx);
  Scalar sum = ctx.zero();
  Scalar qlx = one;
  Scalar ql1 = q;  // q^{l+1}
  for (std::int64_t l = 0; l <= m; ++l) {
    sum += int_constant(ctx, binomial(m, l)) * sign(l, ctx) * qlx *
           ctx.constant(l + 1) / (one - ql1);
    qlx *= qx;
    ql1 *= q;
  }
  const Scalar base = reading == BracketPowerReading::kSignCorrected ? one - q : q - one;
  return sum / base.pow(m - 1);
}

Scalar closed_reflected_power(std::int64_t n, const Argument& x, const QContext& ctx) {
  if (n < 0) throw DomainError("exponent must be non-negative");
  if (n == 0) return ctx.one();
  const Scalar one = ctx.one();
  const Scalar& q = ctx.q();
  const Scalar qx = q_pow(x, ctx);
  Scalar sum = ctx.zero();
  Scalar qlx = one;
  Scalar ql1 = q;
  for (std::int64_t l = 0; l <= n; ++l) {
    sum += int_constant(ctx, binomial(n, l)) * sign(l, ctx) * qlx *
           ctx.constant(l + 1) / (ql1 - one);
    qlx *= qx;
    ql1 *= q;
  }
  return q.pow(n) * sum / (q - one).pow(n - 1);
}

Scalar closed_one_minus_x_power(std::int64_t n, CarlitzTable& table) {
  if (n <= 1) throw DomainError("closed form for int [1-x]^n needs n > 1");
  const QContext& ctx = table.context();
  const Scalar& q = ctx.q();
  return q * q * beta_inverse_q(n, table) + ctx.constant(n + 1) - q;
}

Scalar reflected_power_by_expansion(std::int64_t n, CarlitzTable& table) {
  if (n < 0) throw DomainError("exponent must be non-negative");
  return direct_route(1, 0, n, table);
}

Scalar bernstein_integral(std::int64_t k, std::int64_t n, CarlitzTable& table,
                          BernsteinRoute route) {
  const BernsteinSpec spec(k, n);
  const mpz_class prefactor = binomial(n, k);
  if (route == BernsteinRoute::kDirect) return direct_route(prefactor, k, n, table);
  if (n <= k + 1) throw DomainError("reflected route needs n > k + 1");
  return reflected_route(prefactor, k, n, [n](std::int64_t l) { return n - l; }, table);
}

Scalar two_product_integral(std::int64_t n, std::int64_t m, std::int64_t k,
                            CarlitzTable& table, ProductRoute route) {
  const BernsteinSpec first(k, n);
  const BernsteinSpec second(k, m);
  const mpz_class prefactor = binomial(n, k) * binomial(m, k);
  const std::int64_t total = n + m;
  if (route == ProductRoute::kII) return direct_route(prefactor, 2 * k, total, table);
  if (total <= 2 * k + 1) throw DomainError("route I needs n + m > 2k + 1");
  return reflected_route(prefactor, 2 * k, total,
                         [total](std::int64_t l) { return total - l; }, table);
}

Scalar bernstein_product_integral(std::int64_t k, std::span<const std::int64_t> degrees,
                                  CarlitzTable& table, ProductRoute route) {
  if (degrees.empty()) throw DomainError("product needs at least one factor");
  mpz_class prefactor = 1;
  std::int64_t total = 0;
  for (const std::int64_t n : degrees) {
    const BernsteinSpec spec(k, n);
    prefactor *= binomial(n, k);
    total += n;
  }
  const auto s = static_cast<std::int64_t>(degrees.size());
  if (route == ProductRoute::kII) return direct_route(prefactor, s * k, total, table);
  if (k < 1 || std::any_of(degrees.begin(), degrees.end(), [](auto n) { return n < 1; })) {
    throw DomainError("route I needs k and every n_i in N");
  }
  if (total <= s * k + 1) throw DomainError("route I needs sum n_i > s k + 1");
  return reflected_route(prefactor, s * k, total,
                         [total](std::int64_t l) { return total - l; }, table);
}

Scalar bernstein_power_product_integral(std::int64_t k,
                                        std::span<const PowerFactor> factors,
                                        CarlitzTable& table, ProductRoute route,
                                        PowerIndexReading reading) {
  if (factors.empty()) throw DomainError("product needs at least one factor");
  mpz_class prefactor = 1;
  std::int64_t total = 0;
  std::int64_t multiplicity = 0;
  for (const auto& f : factors) {
    if (f.m < 0) throw DomainError("powers must be non-negative");
    const BernsteinSpec spec(k, f.n);
    mpz_class c = binomial(f.n, k);
    mpz_pow_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(f.m));
    prefactor *= c;
    total += f.n * f.m;
    multiplicity += f.m;
  }
  if (route == ProductRoute::kII) {
    return direct_route(prefactor, multiplicity * k, total, table);
  }
  if (total <= multiplicity * k + 1) {
    throw DomainError("route I needs sum m_i n_i > (sum m_i) k + 1");
  }
  const std::int64_t printed = factors.front().n * factors.front().m +
                               factors.back().n * factors.back().m;
  const std::int64_t base = reading == PowerIndexReading::kSum ? total : printed;
  return reflected_route(prefactor, multiplicity * k, total,
                         [base](std::int64_t l) { return base - l; }, table);
}

}  // namespace qbern
