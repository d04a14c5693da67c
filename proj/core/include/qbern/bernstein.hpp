#pragma once

#include <cstdint>
#include <span>

#include "qbern/qfield.hpp"

namespace qbern {

/// Index pair (k, n) of a q-Bernstein polynomial, 0 <= k <= n.
class BernsteinSpec {
 public:
  /// Throws DomainError unless 0 <= k <= n.
  BernsteinSpec(std::int64_t k, std::int64_t n);

  std::int64_t k() const { return k_; }
  std::int64_t n() const { return n_; }

 private:
  std::int64_t k_;
  std::int64_t n_;
};

/// B_{k,n}(x,q) = C(n,k) [x]_q^k [1-x]_{1/q}^{n-k}.
Scalar bernstein_eval(const BernsteinSpec& spec, const Argument& x,
                      const QContext& ctx);

/// The same polynomial from a precomputed bracket value [x]_q.
Scalar bernstein_from_bracket(const BernsteinSpec& spec, const Scalar& bracket,
                              const QContext& ctx);

/// Order-n operator sum_k samples[k] B_{k,n}(x,q); samples[k] stands for
/// f(k/n). Throws LengthMismatch unless samples.size() == n + 1, and
/// DomainError for n < 1.
Scalar bernstein_operator(std::span<const Scalar> samples, std::int64_t n,
                          const Argument& x, const QContext& ctx);

}  // namespace qbern
