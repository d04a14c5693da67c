#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "qbern/qfield.hpp"

namespace qbern {

/// Memoized Carlitz q-Bernoulli numbers beta_{k,q} and the unmodified
/// numbers xi_k, solved from their umbral recurrences for the top term:
///
///   beta_k = (delta_{k,1} - q * sum_{i<k} C(k,i) q^i beta_i) / (q^{k+1} - 1)
///   xi_k   = (delta_{k,1} -     sum_{i<k} C(k,i) q^i xi_i)   / (q^k - 1)
///
/// Tables only grow. A table is not safe for concurrent fills; give each
/// thread its own (entries are deterministic, so copies agree bit for bit).
class CarlitzTable {
 public:
  explicit CarlitzTable(QContext ctx);
  CarlitzTable(CarlitzTable&&) noexcept = default;
  CarlitzTable& operator=(CarlitzTable&&) noexcept = default;

  const QContext& context() const { return ctx_; }

  /// beta_{n,q}. In the p-adic backend throws PrecisionExhausted naming the
  /// first step whose divisor valuation meets the remaining precision.
  Scalar beta(std::int64_t n);
  Scalar xi(std::int64_t n);

  /// The table for the same backend with q replaced by 1/q, created lazily.
  CarlitzTable& inverse();

  std::size_t beta_size() const { return beta_.size(); }

 private:
  void validate_depth(std::int64_t n, std::int64_t offset) const;

  QContext ctx_;
  std::vector<Scalar> beta_;
  std::vector<Scalar> xi_;
  std::unique_ptr<CarlitzTable> inverse_;
};

Scalar beta(std::int64_t n, CarlitzTable& table);
Scalar xi(std::int64_t n, CarlitzTable& table);

/// beta_{n,q}(x) = sum_{i=0}^{n} C(n,i) beta_{i,q} q^{ix} [x]_q^{n-i}.
Scalar beta_poly(std::int64_t n, const Argument& x, CarlitzTable& table);

/// beta_{n,1/q}.
Scalar beta_inverse_q(std::int64_t n, CarlitzTable& table);

/// Classical Bernoulli number B_n (B_1 = -1/2) from
/// sum_{k=0}^{n} C(n+1,k) B_k = 0.
mpq_class classical_bernoulli(std::int64_t n);

/// Value at q = 1 of the reduced form. Throws PoleAtOne if the reduced
/// denominator vanishes there.
mpq_class eval_at_one(const RationalFunction& f);

/// Digits lost by the first n steps of a recurrence whose step-k divisor is
/// q^(k + offset) - 1, i.e. sum_k v_p(q - 1) + v_p(k + offset) by the
/// lifting-the-exponent law. offset = 1 for beta, 0 for xi.
std::int64_t recurrence_precision_loss(std::int64_t n, std::int64_t offset,
                                       const QContext& ctx);

}  // namespace qbern
