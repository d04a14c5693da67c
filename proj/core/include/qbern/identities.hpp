#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbern/carlitz.hpp"
#include "qbern/integral.hpp"
#include "qbern/qfield.hpp"
#include "qbern/serialize.hpp"

namespace qbern {

enum class IdentityId {
  kThm1,
  kProp2,
  kEq6,
  kEq7,
  kThm3,
  kEq9Eq11,
  kEq13Eq14,
  kThm4Cor5,
  kThm6,
  kEq10Symmetry,
  kQToOne,
};

/// "THM1", "PROP2", ... as used in grid files and reports.
std::string to_string(IdentityId id);
std::optional<IdentityId> identity_from_string(std::string_view name);

enum class VerdictKind { kExactEqual, kEqualToValuation, kFail };

struct Verdict {
  VerdictKind kind = VerdictKind::kFail;
  /// Agreement valuation for kEqualToValuation (and the partial agreement
  /// reached on a numeric kFail).
  std::int64_t valuation = 0;
  /// lhs - rhs, set for kFail.
  std::optional<Scalar> difference;
  std::string reason;
};

/// Comparison of one side against an independent Riemann run.
struct OracleCheck {
  std::string label;
  std::int64_t level = 0;
  std::int64_t valuation = 0;
  bool converged = false;
  bool passed = false;
};

struct IdentityReport {
  IdentityId id = IdentityId::kThm1;
  /// Non-empty when the identity has more than one candidate reading.
  std::string reading;
  Json parameters = Json::object();
  Backend backend = Backend::kSymbolic;
  std::optional<Scalar> lhs;
  std::optional<Scalar> rhs;
  std::optional<Verdict> verdict;
  bool domain_ok = true;
  /// Reported but excluded from the pass/fail decision.
  bool quarantined = false;
  std::vector<OracleCheck> oracle;
  Json notes = Json::object();

  /// Failed if in domain, not quarantined, and either the verdict or an
  /// oracle check failed.
  bool failed() const;
};

struct VerifyOptions {
  std::int64_t target = 8;
  /// Compare closed forms against Riemann runs (p-adic backend only).
  bool riemann_crosscheck = false;
  IntegrateOptions integrate;
  /// Negate the right-hand side before comparing. Used by the self-test.
  bool corrupt = false;
};

/// Runs verifications in one context, sharing a Carlitz table between them.
/// Not thread safe; use one verifier per thread.
class Verifier {
 public:
  Verifier(QContext ctx, VerifyOptions options = {});

  const QContext& context() const { return ctx_; }
  VerifyOptions& options() { return options_; }

  /// beta_{n,1/q}(1-x) against (-1)^n q^n beta_{n,q}(x). In the p-adic backend
  /// both sides are Riemann integrals, under mu_{1/q} and mu_q. The notes
  /// record which sign of the reflected closed form the results support.
  IdentityReport theorem1(std::int64_t n, std::int64_t x);
  /// beta_{n,q}(2) = beta_{n,q}/q^2 + n + 1 - 1/q, n > 1.
  IdentityReport prop2(std::int64_t n);
  /// int [1-x]_{1/q}^n dmu_q against (-1)^n q^n beta_{n,q}(-1).
  IdentityReport eq6(std::int64_t n);
  /// (-1)^n q^n beta_{n,q}(-1) against beta_{n,1/q}(2).
  IdentityReport eq7(std::int64_t n);
  /// int [1-x]_{1/q}^n dmu_q = q^2 beta_{n,1/q} + n + 1 - q, n > 1.
  IdentityReport theorem3(std::int64_t n);
  /// Direct against reflected Bernstein integral, n > k + 1.
  IdentityReport eq9_eq11(std::int64_t n, std::int64_t k);
  /// Two-factor product, routes I and II, n + m > 2k + 1.
  IdentityReport two_product(std::int64_t n, std::int64_t m, std::int64_t k);
  /// s-factor product, routes I and II, sum n_i > s k + 1.
  IdentityReport theorem4(const std::vector<std::int64_t>& degrees, std::int64_t k);
  /// Powered product, routes I and II. The as-printed index reading is
  /// reported as quarantined.
  IdentityReport theorem6(const std::vector<PowerFactor>& factors, std::int64_t k,
                          PowerIndexReading reading = PowerIndexReading::kSum);
  /// B_{k,n}(x,q) = B_{n-k,n}(1-x,1/q).
  IdentityReport symmetry_eq10(std::int64_t k, std::int64_t n, const Argument& x);
  /// beta_{n,q} at q = 1 against B_n (symbolic only). Notes whether xi_n has
  /// a pole at q = 1.
  IdentityReport q_to_one(std::int64_t n);

 private:
  IdentityReport start(IdentityId id, Json parameters) const;
  void decide(IdentityReport& report, Scalar lhs, Scalar rhs) const;
  void crosscheck(IdentityReport& report, const std::string& label, const Integrand& f,
                  const QContext& ctx, const Scalar& expected) const;
  RiemannResult run(const Integrand& f, const QContext& ctx, bool& converged) const;

  QContext ctx_;
  VerifyOptions options_;
  CarlitzTable table_;
};

IdentityReport verify_theorem1(std::int64_t n, std::int64_t x, const QContext& ctx,
                               const VerifyOptions& options = {});
IdentityReport verify_prop2(std::int64_t n, const QContext& ctx,
                            const VerifyOptions& options = {});
/// Eq (6) and Eq (7) reports, in that order.
std::vector<IdentityReport> verify_eq6_eq7(std::int64_t n, const QContext& ctx,
                                           const VerifyOptions& options = {});
IdentityReport verify_theorem3(std::int64_t n, const QContext& ctx,
                               const VerifyOptions& options = {});
IdentityReport verify_eq9_eq11(std::int64_t n, std::int64_t k, const QContext& ctx,
                               const VerifyOptions& options = {});
IdentityReport verify_two_product(std::int64_t n, std::int64_t m, std::int64_t k,
                                  const QContext& ctx, const VerifyOptions& options = {});
IdentityReport verify_theorem4(const std::vector<std::int64_t>& degrees, std::int64_t k,
                               const QContext& ctx, const VerifyOptions& options = {});
IdentityReport verify_theorem6(const std::vector<PowerFactor>& factors, std::int64_t k,
                               const QContext& ctx, const VerifyOptions& options = {},
                               PowerIndexReading reading = PowerIndexReading::kSum);
IdentityReport verify_symmetry_eq10(std::int64_t k, std::int64_t n, const Argument& x,
                                    const QContext& ctx, const VerifyOptions& options = {});

struct GridEntry {
  IdentityId id = IdentityId::kThm1;
  std::vector<Json> instances;
  bool corrupt = false;
};

struct SuiteConfig {
  Backend backend = Backend::kSymbolic;
  std::int64_t prime = 3;
  std::int64_t precision = 40;
  std::string q = "1+p";
  VerifyOptions verify;
  std::vector<GridEntry> grid;
  unsigned threads = 1;
};

/// The acceptance grid: every identity with at least five in-domain
/// instances, plus a few out-of-domain and quarantined points.
std::vector<GridEntry> default_grid();

/// Reads {"backend", "p", "precision", "q", "target_valuation", "level_cap",
/// "riemann_crosscheck", "grid": [{"identity", "instances", "corrupt"}]}.
/// Missing keys keep the values already in `base`. Throws ConfigError.
SuiteConfig parse_suite_config(const Json& j, SuiteConfig base = {});

/// Reports in grid order regardless of the thread count.
std::vector<IdentityReport> run_suite(const SuiteConfig& config);

Json to_json(const Verdict& verdict);
Json to_json(const IdentityReport& report);
/// {"summary": {"total", "passed", "failed", "skipped", "quarantined"}}
Json suite_summary(const std::vector<IdentityReport>& reports);

}  // namespace qbern
