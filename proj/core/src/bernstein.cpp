#include "qbern/bernstein.hpp"

#include <string>

#include "qbern/errors.hpp"

namespace qbern {

BernsteinSpec::BernsteinSpec(std::int64_t k, std::int64_t n) : k_(k), n_(n) {
  if (k < 0 || n < 0 || k > n) {
    throw DomainError("Bernstein index requires 0 <= k <= n, got k=" +
                      std::to_string(k) + " n=" + std::to_string(n));
  }
}

Scalar bernstein_from_bracket(const BernsteinSpec& spec, const Scalar& bracket,
                              const QContext& ctx) {
  const Scalar reflected = ctx.one() - bracket;
  return ctx.constant(mpq_class(binomial(spec.n(), spec.k()))) *
         bracket.pow(spec.k()) * reflected.pow(spec.n() - spec.k());
}

Scalar bernstein_eval(const BernsteinSpec& spec, const Argument& x,
                      const QContext& ctx) {
  return bernstein_from_bracket(spec, q_bracket(x, ctx), ctx);
}

Scalar bernstein_operator(std::span<const Scalar> samples, std::int64_t n,
                          const Argument& x, const QContext& ctx) {
  if (n < 1) throw DomainError("Bernstein operator order must be >= 1");
  if (static_cast<std::int64_t>(samples.size()) != n + 1) {
    throw LengthMismatch("Bernstein operator of order " + std::to_string(n) +
                         " needs " + std::to_string(n + 1) + " samples, got " +
                         std::to_string(samples.size()));
  }
  const Scalar bracket = q_bracket(x, ctx);
  Scalar sum = ctx.zero();
  for (std::int64_t k = 0; k <= n; ++k) {
    sum += samples[static_cast<std::size_t>(k)] *
           bernstein_from_bracket(BernsteinSpec(k, n), bracket, ctx);
  }
  return sum;
}

}  // namespace qbern
