#include "qbern/identities.hpp"

#include <array>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <utility>

#include "qbern/bernstein.hpp"
#include "qbern/errors.hpp"

namespace qbern {

namespace {

constexpr std::array<std::pair<IdentityId, std::string_view>, 11> kNames{{
    {IdentityId::kThm1, "THM1"},
    {IdentityId::kProp2, "PROP2"},
    {IdentityId::kEq6, "EQ6"},
    {IdentityId::kEq7, "EQ7"},
    {IdentityId::kThm3, "THM3"},
    {IdentityId::kEq9Eq11, "EQ9_EQ11"},
    {IdentityId::kEq13Eq14, "EQ13_EQ14"},
    {IdentityId::kThm4Cor5, "THM4_COR5"},
    {IdentityId::kThm6, "THM6"},
    {IdentityId::kEq10Symmetry, "EQ10_SYMMETRY"},
    {IdentityId::kQToOne, "Q_TO_1"},
}};

Scalar sign(std::int64_t n, const QContext& ctx) {
  return ctx.constant(n % 2 == 0 ? 1 : -1);
}

std::string reading_name(PowerIndexReading reading) {
  return reading == PowerIndexReading::kSum ? "sum_index" : "as_printed_index";
}

Json argument_json(const Argument& x) {
  if (const auto* i = std::get_if<std::int64_t>(&x)) return *i;
  return to_json(std::get<PadicNumber>(x));
}

Argument reflect(const Argument& x, const QContext& ctx) {
  if (const auto* i = std::get_if<std::int64_t>(&x)) return 1 - *i;
  const auto& v = std::get<PadicNumber>(x);
  return PadicNumber::from_integer(1, v.context()) - v;
}

// Agreement of two values: exact equality symbolically, valuation p-adically.
std::int64_t agreement(const Scalar& a, const Scalar& b) {
  if (a.is_symbolic()) return a == b ? kInfiniteValuation : 0;
  return agreement_valuation(a.padic(), b.padic());
}

}  // namespace

std::string to_string(IdentityId id) {
  for (const auto& [key, name] : kNames) {
    if (key == id) return std::string(name);
  }
  return "UNKNOWN";
}

std::optional<IdentityId> identity_from_string(std::string_view name) {
  for (const auto& [key, text] : kNames) {
    if (text == name) return key;
  }
  return std::nullopt;
}

bool IdentityReport::failed() const {
  if (!domain_ok || quarantined) return false;
  if (!verdict || verdict->kind == VerdictKind::kFail) return true;
  for (const auto& check : oracle) {
    if (!check.passed) return true;
  }
  return false;
}

Verifier::Verifier(QContext ctx, VerifyOptions options)
    : ctx_(ctx), options_(std::move(options)), table_(std::move(ctx)) {
  options_.integrate.target = options_.target;
}

IdentityReport Verifier::start(IdentityId id, Json parameters) const {
  IdentityReport report;
  report.id = id;
  report.parameters = std::move(parameters);
  report.backend = ctx_.backend();
  return report;
}

void Verifier::decide(IdentityReport& report, Scalar lhs, Scalar rhs) const {
  if (options_.corrupt) {
    Scalar flipped = -rhs;
    rhs = flipped == rhs ? rhs + ctx_.one() : flipped;
  }
  Verdict verdict;
  if (lhs.is_symbolic()) {
    if (lhs == rhs) {
      verdict.kind = VerdictKind::kExactEqual;
    } else {
      verdict.kind = VerdictKind::kFail;
      verdict.difference = lhs - rhs;
      verdict.reason = "canonical forms differ";
    }
  } else {
    const std::int64_t certified =
        std::min(lhs.padic().precision(), rhs.padic().precision());
    const std::int64_t v = agreement_valuation(lhs.padic(), rhs.padic());
    verdict.valuation = v;
    if (v >= options_.target) {
      verdict.kind = VerdictKind::kEqualToValuation;
    } else {
      verdict.kind = VerdictKind::kFail;
      verdict.difference = lhs - rhs;
      verdict.reason = certified < options_.target
                           ? "certified precision " + std::to_string(certified) +
                                 " is below the target"
                           : "sides agree only to valuation " + std::to_string(v);
    }
  }
  report.lhs = std::move(lhs);
  report.rhs = std::move(rhs);
  report.verdict = std::move(verdict);
}

RiemannResult Verifier::run(const Integrand& f, const QContext& ctx, bool& converged) const {
  try {
    converged = true;
    return integrate(f, ctx, options_.integrate);
  } catch (const MaxLevelExceeded& e) {
    converged = false;
    return e.best();
  }
}

void Verifier::crosscheck(IdentityReport& report, const std::string& label,
                          const Integrand& f, const QContext& ctx,
                          const Scalar& expected) const {
  if (!ctx_.is_padic() || !options_.riemann_crosscheck) return;
  OracleCheck check;
  check.label = label;
  const RiemannResult r = run(f, ctx, check.converged);
  check.level = r.level;
  check.valuation = agreement_valuation(r.value.padic(), expected.padic());
  check.passed = check.valuation >= options_.target;
  report.oracle.push_back(std::move(check));
}

IdentityReport Verifier::theorem1(std::int64_t n, std::int64_t x) {
  IdentityReport report = start(IdentityId::kThm1, Json{{"n", n}, {"x", x}});
  if (n < 0) {
    report.domain_ok = false;
    return report;
  }
  const QContext inverse = invert_q(ctx_);
  const Scalar factor = sign(n, ctx_) * ctx_.q().pow(n);
  Scalar lhs = ctx_.one();
  Scalar rhs = ctx_.one();
  if (n > 0) {
    if (ctx_.is_padic()) {
      bool lhs_converged = false;
      bool rhs_converged = false;
      const RiemannResult left = run(BracketPower{1 - x, n}, inverse, lhs_converged);
      const RiemannResult right = run(BracketPower{x, n}, ctx_, rhs_converged);
      report.oracle.push_back({"riemann_mu_inverse_q", left.level,
                               left.stabilization_valuation, lhs_converged, true});
      report.oracle.push_back({"riemann_mu_q", right.level, right.stabilization_valuation,
                               rhs_converged, true});
      lhs = left.value;
      rhs = factor * right.value;
    } else {
      lhs = beta_poly(n, Argument{1 - x}, table_.inverse());
      rhs = factor * beta_poly(n, Argument{x}, table_);
    }
  }

  // Which sign of the reflected closed form the computed left side supports.
  const Scalar printed = closed_reflected_power(n, Argument{x}, ctx_);
  const std::int64_t as_printed = agreement(lhs, printed);
  const std::int64_t negated = agreement(lhs, -printed);
  auto verdict_text = [](std::int64_t a, std::int64_t b) {
    if (a > b) return "as_printed";
    if (b > a) return "negated";
    return "undecided";
  };
  auto valuation_json = [](std::int64_t v) {
    return v == kInfiniteValuation ? Json("exact") : Json(v);
  };
  report.notes["reflected_closed_form_supported"] = verdict_text(as_printed, negated);
  report.notes["reflected_closed_form_agreement"] = valuation_json(as_printed);
  report.notes["reflected_closed_form_negated_agreement"] = valuation_json(negated);

  // Same question for the bracket-power closed form against beta_{n,q}(x).
  const Scalar target = n == 0 ? ctx_.one() : rhs / factor;
  const Scalar bracket_printed =
      closed_bracket_power(n, Argument{x}, ctx_, BracketPowerReading::kAsPrinted);
  report.notes["bracket_closed_form_supported"] =
      verdict_text(agreement(target, bracket_printed), agreement(target, -bracket_printed));

  decide(report, std::move(lhs), std::move(rhs));
  return report;
}

IdentityReport Verifier::prop2(std::int64_t n) {
  IdentityReport report = start(IdentityId::kProp2, Json{{"n", n}});
  if (n <= 1) {
    report.domain_ok = false;
    return report;
  }
  const Scalar& q = ctx_.q();
  Scalar lhs = beta_poly(n, Argument{std::int64_t{2}}, table_);
  Scalar rhs = table_.beta(n) / (q * q) + ctx_.constant(n + 1) - ctx_.one() / q;
  decide(report, std::move(lhs), std::move(rhs));
  return report;
}

IdentityReport Verifier::eq6(std::int64_t n) {
  IdentityReport report = start(IdentityId::kEq6, Json{{"n", n}});
  if (n < 0) {
    report.domain_ok = false;
    return report;
  }
  Scalar lhs = reflected_power_by_expansion(n, table_);
  Scalar rhs = sign(n, ctx_) * ctx_.q().pow(n) * beta_poly(n, Argument{std::int64_t{-1}}, table_);
  crosscheck(report, "riemann_reflected_power", ReflectedPower{1, n}, ctx_, lhs);
  decide(report, std::move(lhs), std::move(rhs));
  return report;
}

IdentityReport Verifier::eq7(std::int64_t n) {
  IdentityReport report = start(IdentityId::kEq7, Json{{"n", n}});
  if (n < 0) {
    report.domain_ok = false;
    return report;
  }
  Scalar lhs = sign(n, ctx_) * ctx_.q().pow(n) * beta_poly(n, Argument{std::int64_t{-1}}, table_);
  Scalar rhs = beta_poly(n, Argument{std::int64_t{2}}, table_.inverse());
  crosscheck(report, "riemann_reflected_power", ReflectedPower{1, n}, ctx_, rhs);
  decide(report, std::move(lhs), std::move(rhs));
  return report;
}

IdentityReport Verifier::theorem3(std::int64_t n) {
  IdentityReport report = start(IdentityId::kThm3, Json{{"n", n}});
  if (n <= 1) {
    report.domain_ok = false;
    return report;
  }
  Scalar lhs = reflected_power_by_expansion(n, table_);
  Scalar rhs = closed_one_minus_x_power(n, table_);
  crosscheck(report, "riemann_reflected_power", ReflectedPower{1, n}, ctx_, rhs);
  decide(report, std::move(lhs), std::move(rhs));
  return report;
}

IdentityReport Verifier::eq9_eq11(std::int64_t n, std::int64_t k) {
  IdentityReport report = start(IdentityId::kEq9Eq11, Json{{"n", n}, {"k", k}});
  if (k < 0 || n < k || n <= k + 1) {
    report.domain_ok = false;
    return report;
  }
  Scalar lhs = bernstein_integral(k, n, table_, BernsteinRoute::kDirect);
  Scalar rhs = bernstein_integral(k, n, table_, BernsteinRoute::kReflected);
  crosscheck(report, "riemann_bernstein", BernsteinProduct{{{k, n, 1}}}, ctx_, lhs);
  decide(report, std::move(lhs), std::move(rhs));
  return report;
}

IdentityReport Verifier::two_product(std::int64_t n, std::int64_t m, std::int64_t k) {
  IdentityReport report =
      start(IdentityId::kEq13Eq14, Json{{"n", n}, {"m", m}, {"k", k}});
  if (k < 0 || n < k || m < k || n + m <= 2 * k + 1) {
    report.domain_ok = false;
    return report;
  }
  Scalar lhs = two_product_integral(n, m, k, table_, ProductRoute::kI);
  Scalar rhs = two_product_integral(n, m, k, table_, ProductRoute::kII);
  crosscheck(report, "riemann_bernstein_product", BernsteinProduct{{{k, n, 1}, {k, m, 1}}},
             ctx_, rhs);
  decide(report, std::move(lhs), std::move(rhs));
  return report;
}

IdentityReport Verifier::theorem4(const std::vector<std::int64_t>& degrees, std::int64_t k) {
  const auto s = static_cast<std::int64_t>(degrees.size());
  IdentityReport report =
      start(IdentityId::kThm4Cor5, Json{{"s", s}, {"n", degrees}, {"k", k}});
  const std::int64_t total = std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0});
  bool ok = s >= 1 && k >= 1 && total > s * k + 1;
  for (std::int64_t n : degrees) ok = ok && n >= 1 && n >= k;
  if (!ok) {
    report.domain_ok = false;
    return report;
  }
  Scalar lhs = bernstein_product_integral(k, degrees, table_, ProductRoute::kI);
  Scalar rhs = bernstein_product_integral(k, degrees, table_, ProductRoute::kII);
  BernsteinProduct product;
  for (std::int64_t n : degrees) product.factors.push_back({k, n, 1});
  crosscheck(report, "riemann_bernstein_product", product, ctx_, rhs);
  decide(report, std::move(lhs), std::move(rhs));
  return report;
}

IdentityReport Verifier::theorem6(const std::vector<PowerFactor>& factors, std::int64_t k,
                                  PowerIndexReading reading) {
  Json list = Json::array();
  for (const auto& f : factors) list.push_back(Json::array({f.n, f.m}));
  IdentityReport report = start(IdentityId::kThm6, Json{{"factors", list}, {"k", k}});
  report.reading = reading_name(reading);
  report.quarantined = reading == PowerIndexReading::kAsPrinted;
  std::int64_t weighted = 0;
  std::int64_t powers = 0;
  bool ok = !factors.empty() && k >= 0;
  for (const auto& f : factors) {
    weighted += f.n * f.m;
    powers += f.m;
    ok = ok && f.n >= k && f.m >= 0;
  }
  if (!ok || weighted <= powers * k + 1) {
    report.domain_ok = false;
    return report;
  }
  Scalar lhs = bernstein_power_product_integral(k, factors, table_, ProductRoute::kI, reading);
  Scalar rhs = bernstein_power_product_integral(k, factors, table_, ProductRoute::kII);
  BernsteinProduct product;
  for (const auto& f : factors) product.factors.push_back({k, f.n, f.m});
  crosscheck(report, "riemann_bernstein_power_product", product, ctx_, rhs);
  decide(report, std::move(lhs), std::move(rhs));
  return report;
}

IdentityReport Verifier::symmetry_eq10(std::int64_t k, std::int64_t n, const Argument& x) {
  IdentityReport report =
      start(IdentityId::kEq10Symmetry, Json{{"k", k}, {"n", n}, {"x", argument_json(x)}});
  if (k < 0 || n < 0 || k > n) {
    report.domain_ok = false;
    return report;
  }
  Scalar lhs = bernstein_eval(BernsteinSpec(k, n), x, ctx_);
  Scalar rhs = bernstein_eval(BernsteinSpec(n - k, n), reflect(x, ctx_), invert_q(ctx_));
  decide(report, std::move(lhs), std::move(rhs));
  return report;
}

IdentityReport Verifier::q_to_one(std::int64_t n) {
  IdentityReport report = start(IdentityId::kQToOne, Json{{"n", n}});
  if (n < 0 || ctx_.is_padic()) {
    report.domain_ok = false;
    return report;
  }
  Scalar lhs = RationalFunction::constant(eval_at_one(table_.beta(n).symbolic()));
  Scalar rhs = RationalFunction::constant(classical_bernoulli(n));
  bool pole = false;
  try {
    eval_at_one(table_.xi(n).symbolic());
  } catch (const PoleAtOne&) {
    pole = true;
  }
  report.notes["xi_pole_at_one"] = pole;
  decide(report, std::move(lhs), std::move(rhs));
  return report;
}

IdentityReport verify_theorem1(std::int64_t n, std::int64_t x, const QContext& ctx,
                               const VerifyOptions& options) {
  return Verifier(ctx, options).theorem1(n, x);
}

IdentityReport verify_prop2(std::int64_t n, const QContext& ctx, const VerifyOptions& options) {
  return Verifier(ctx, options).prop2(n);
}

std::vector<IdentityReport> verify_eq6_eq7(std::int64_t n, const QContext& ctx,
                                           const VerifyOptions& options) {
  Verifier verifier(ctx, options);
  std::vector<IdentityReport> out;
  out.push_back(verifier.eq6(n));
  out.push_back(verifier.eq7(n));
  return out;
}

IdentityReport verify_theorem3(std::int64_t n, const QContext& ctx,
                               const VerifyOptions& options) {
  return Verifier(ctx, options).theorem3(n);
}

IdentityReport verify_eq9_eq11(std::int64_t n, std::int64_t k, const QContext& ctx,
                               const VerifyOptions& options) {
  return Verifier(ctx, options).eq9_eq11(n, k);
}

IdentityReport verify_two_product(std::int64_t n, std::int64_t m, std::int64_t k,
                                  const QContext& ctx, const VerifyOptions& options) {
  return Verifier(ctx, options).two_product(n, m, k);
}

IdentityReport verify_theorem4(const std::vector<std::int64_t>& degrees, std::int64_t k,
                               const QContext& ctx, const VerifyOptions& options) {
  return Verifier(ctx, options).theorem4(degrees, k);
}

IdentityReport verify_theorem6(const std::vector<PowerFactor>& factors, std::int64_t k,
                               const QContext& ctx, const VerifyOptions& options,
                               PowerIndexReading reading) {
  return Verifier(ctx, options).theorem6(factors, k, reading);
}

IdentityReport verify_symmetry_eq10(std::int64_t k, std::int64_t n, const Argument& x,
                                    const QContext& ctx, const VerifyOptions& options) {
  return Verifier(ctx, options).symmetry_eq10(k, n, x);
}

// ---------------------------------------------------------------------------
// suite

namespace {

std::int64_t get_int(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer()) {
    throw ConfigError(std::string("instance needs integer '") + key + "'");
  }
  return j.at(key).get<std::int64_t>();
}

std::vector<std::int64_t> get_int_list(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
    throw ConfigError(std::string("instance needs integer list '") + key + "'");
  }
  std::vector<std::int64_t> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must hold integers");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

std::vector<PowerFactor> get_factors(const Json& j) {
  if (!j.is_object() || !j.contains("factors") || !j.at("factors").is_array()) {
    throw ConfigError("instance needs 'factors': [[n, m], ...]");
  }
  std::vector<PowerFactor> out;
  for (const auto& f : j.at("factors")) {
    if (!f.is_array() || f.size() != 2 || !f[0].is_number_integer() ||
        !f[1].is_number_integer()) {
      throw ConfigError("each factor must be [n, m]");
    }
    out.push_back({f[0].get<std::int64_t>(), f[1].get<std::int64_t>()});
  }
  return out;
}

Argument get_argument(const Json& j, const QContext& ctx) {
  if (!j.is_object() || !j.contains("x")) throw ConfigError("instance needs 'x'");
  const Json& x = j.at("x");
  if (x.is_number_integer()) return x.get<std::int64_t>();
  if (!ctx.is_padic()) throw ConfigError("non-integer 'x' needs the padic backend");
  if (x.is_string()) {
    return PadicNumber::from_rational(parse_rational(x.get<std::string>()),
                                      ctx.padic_context());
  }
  return padic_from_json(x, ctx.padic_context());
}

std::vector<PowerIndexReading> get_readings(const Json& j) {
  const std::string reading =
      j.contains("reading") && j.at("reading").is_string() ? j.at("reading").get<std::string>()
                                                           : "both";
  if (reading == "sum") return {PowerIndexReading::kSum};
  if (reading == "as_printed") return {PowerIndexReading::kAsPrinted};
  if (reading == "both") return {PowerIndexReading::kSum, PowerIndexReading::kAsPrinted};
  throw ConfigError("reading must be 'sum', 'as_printed' or 'both'");
}

// Validates the instance shape without computing anything.
void validate(IdentityId id, const Json& j) {
  switch (id) {
    case IdentityId::kThm1:
      get_int(j, "n");
      get_int(j, "x");
      break;
    case IdentityId::kEq9Eq11:
      get_int(j, "n");
      get_int(j, "k");
      break;
    case IdentityId::kEq13Eq14:
      get_int(j, "n");
      get_int(j, "m");
      get_int(j, "k");
      break;
    case IdentityId::kThm4Cor5:
      get_int_list(j, "n");
      get_int(j, "k");
      break;
    case IdentityId::kThm6:
      get_factors(j);
      get_int(j, "k");
      get_readings(j);
      break;
    case IdentityId::kEq10Symmetry:
      get_int(j, "k");
      get_int(j, "n");
      if (!j.contains("x")) throw ConfigError("instance needs 'x'");
      break;
    default:
      get_int(j, "n");
      break;
  }
}

std::vector<IdentityReport> run_instance(Verifier& v, IdentityId id, const Json& j) {
  switch (id) {
    case IdentityId::kThm1:
      return {v.theorem1(get_int(j, "n"), get_int(j, "x"))};
    case IdentityId::kProp2:
      return {v.prop2(get_int(j, "n"))};
    case IdentityId::kEq6:
      return {v.eq6(get_int(j, "n"))};
    case IdentityId::kEq7:
      return {v.eq7(get_int(j, "n"))};
    case IdentityId::kThm3:
      return {v.theorem3(get_int(j, "n"))};
    case IdentityId::kEq9Eq11:
      return {v.eq9_eq11(get_int(j, "n"), get_int(j, "k"))};
    case IdentityId::kEq13Eq14:
      return {v.two_product(get_int(j, "n"), get_int(j, "m"), get_int(j, "k"))};
    case IdentityId::kThm4Cor5:
      return {v.theorem4(get_int_list(j, "n"), get_int(j, "k"))};
    case IdentityId::kThm6: {
      std::vector<IdentityReport> out;
      for (auto reading : get_readings(j)) {
        out.push_back(v.theorem6(get_factors(j), get_int(j, "k"), reading));
      }
      return out;
    }
    case IdentityId::kEq10Symmetry:
      return {v.symmetry_eq10(get_int(j, "k"), get_int(j, "n"), get_argument(j, v.context()))};
    case IdentityId::kQToOne:
      return {v.q_to_one(get_int(j, "n"))};
  }
  return {};
}

struct Job {
  IdentityId id;
  Json instance;
  bool corrupt;
};

}  // namespace

std::vector<GridEntry> default_grid() {
  std::vector<GridEntry> grid;
  auto add = [&](IdentityId id) -> std::vector<Json>& {
    grid.push_back({id, {}, false});
    return grid.back().instances;
  };

  auto& thm1 = add(IdentityId::kThm1);
  for (std::int64_t n = 0; n <= 5; ++n) {
    for (std::int64_t x = 0; x <= 2; ++x) thm1.push_back({{"n", n}, {"x", x}});
  }
  auto& prop2 = add(IdentityId::kProp2);
  for (std::int64_t n = 1; n <= 8; ++n) prop2.push_back({{"n", n}});
  auto& eq6 = add(IdentityId::kEq6);
  for (std::int64_t n = 0; n <= 6; ++n) eq6.push_back({{"n", n}});
  auto& eq7 = add(IdentityId::kEq7);
  for (std::int64_t n = 0; n <= 6; ++n) eq7.push_back({{"n", n}});
  auto& thm3 = add(IdentityId::kThm3);
  for (std::int64_t n = 2; n <= 8; ++n) thm3.push_back({{"n", n}});

  auto& eq9 = add(IdentityId::kEq9Eq11);
  for (std::int64_t n = 2; n <= 8; ++n) {
    for (std::int64_t k = 0; k + 1 < n; ++k) eq9.push_back({{"n", n}, {"k", k}});
  }
  auto& eq13 = add(IdentityId::kEq13Eq14);
  for (std::int64_t n = 0; n <= 5; ++n) {
    for (std::int64_t m = 0; m <= 5; ++m) {
      for (std::int64_t k = 0; k <= std::min(n, m); ++k) {
        if (n + m > 2 * k + 1) eq13.push_back({{"n", n}, {"m", m}, {"k", k}});
      }
    }
  }

  auto& thm4 = add(IdentityId::kThm4Cor5);
  std::vector<std::vector<std::int64_t>> tuples;
  for (std::int64_t a = 1; a <= 4; ++a) {
    tuples.push_back({a});
    for (std::int64_t b = a; b <= 4; ++b) {
      tuples.push_back({a, b});
      for (std::int64_t c = b; c <= 4; ++c) tuples.push_back({a, b, c});
    }
  }
  for (const auto& t : tuples) {
    const auto s = static_cast<std::int64_t>(t.size());
    const std::int64_t total = std::accumulate(t.begin(), t.end(), std::int64_t{0});
    for (std::int64_t k = 1; k <= t.front(); ++k) {
      if (total > s * k + 1) thm4.push_back({{"n", t}, {"k", k}});
    }
  }

  auto& thm6 = add(IdentityId::kThm6);
  for (std::int64_t n1 = 1; n1 <= 3; ++n1) {
    for (std::int64_t m1 = 1; m1 <= 2; ++m1) {
      for (std::int64_t n2 = 1; n2 <= 3; ++n2) {
        for (std::int64_t m2 = 1; m2 <= 2; ++m2) {
          for (std::int64_t k = 0; k <= std::min(n1, n2); ++k) {
            if (n1 * m1 + n2 * m2 <= (m1 + m2) * k + 1) continue;
            thm6.push_back({{"factors", Json::array({Json::array({n1, m1}),
                                                     Json::array({n2, m2})})},
                            {"k", k},
                            {"reading", "both"}});
          }
        }
      }
    }
  }
  // One and three factors, where the two index readings part ways.
  thm6.push_back({{"factors", Json::array({Json::array({3, 1})})}, {"k", 1}, {"reading", "both"}});
  thm6.push_back({{"factors", Json::array({Json::array({3, 2})})}, {"k", 1}, {"reading", "both"}});
  thm6.push_back({{"factors", Json::array({Json::array({2, 1}), Json::array({3, 1}),
                                           Json::array({3, 2})})},
                  {"k", 1},
                  {"reading", "both"}});

  auto& eq10 = add(IdentityId::kEq10Symmetry);
  for (std::int64_t n = 0; n <= 8; ++n) {
    for (std::int64_t k = 0; k <= n; ++k) {
      for (std::int64_t x = 0; x <= 2; ++x) eq10.push_back({{"k", k}, {"n", n}, {"x", x}});
    }
  }
  auto& q1 = add(IdentityId::kQToOne);
  for (std::int64_t n = 0; n <= 12; ++n) q1.push_back({{"n", n}});
  return grid;
}

SuiteConfig parse_suite_config(const Json& j, SuiteConfig base) {
  if (!j.is_object()) throw ConfigError("grid file must hold a JSON object");
  auto integer = [&](const char* key, std::int64_t& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
    out = j.at(key).get<std::int64_t>();
  };
  if (j.contains("backend")) {
    if (!j.at("backend").is_string()) throw ConfigError("'backend' must be a string");
    const auto b = j.at("backend").get<std::string>();
    if (b == "padic") {
      base.backend = Backend::kPadic;
    } else if (b == "symbolic") {
      base.backend = Backend::kSymbolic;
    } else {
      throw ConfigError("unknown backend '" + b + "'");
    }
  }
  integer("p", base.prime);
  integer("precision", base.precision);
  integer("target_valuation", base.verify.target);
  integer("level_cap", base.verify.integrate.level_cap);
  if (j.contains("q")) {
    if (!j.at("q").is_string()) throw ConfigError("'q' must be a string");
    base.q = j.at("q").get<std::string>();
  }
  if (j.contains("riemann_crosscheck")) {
    if (!j.at("riemann_crosscheck").is_boolean()) {
      throw ConfigError("'riemann_crosscheck' must be a boolean");
    }
    base.verify.riemann_crosscheck = j.at("riemann_crosscheck").get<bool>();
  }
  if (j.contains("threads")) {
    std::int64_t threads = 1;
    integer("threads", threads);
    if (threads < 1) throw ConfigError("'threads' must be positive");
    base.threads = static_cast<unsigned>(threads);
  }
  if (base.verify.target < 1) throw ConfigError("target valuation must be positive");
  if (j.contains("grid")) {
    const Json& grid = j.at("grid");
    if (grid.is_string() && grid.get<std::string>() == "default") {
      base.grid = default_grid();
    } else if (grid.is_array()) {
      base.grid.clear();
      for (const auto& entry : grid) {
        if (!entry.is_object() || !entry.contains("identity") ||
            !entry.at("identity").is_string()) {
          throw ConfigError("grid entries need an 'identity' string");
        }
        const auto name = entry.at("identity").get<std::string>();
        const auto id = identity_from_string(name);
        if (!id) throw ConfigError("unknown identity '" + name + "'");
        GridEntry parsed{*id, {}, false};
        if (entry.contains("corrupt")) {
          if (!entry.at("corrupt").is_boolean()) throw ConfigError("'corrupt' must be a boolean");
          parsed.corrupt = entry.at("corrupt").get<bool>();
        }
        if (!entry.contains("instances") || !entry.at("instances").is_array()) {
          throw ConfigError("grid entry '" + name + "' needs an 'instances' array");
        }
        for (const auto& instance : entry.at("instances")) {
          validate(*id, instance);
          parsed.instances.push_back(instance);
        }
        base.grid.push_back(std::move(parsed));
      }
    } else {
      throw ConfigError("'grid' must be an array or \"default\"");
    }
  }
  return base;
}

std::vector<IdentityReport> run_suite(const SuiteConfig& config) {
  const QContext ctx = make_context(config.backend, config.prime, config.precision, config.q);
  std::vector<Job> jobs;
  for (const auto& entry : config.grid) {
    for (const auto& instance : entry.instances) jobs.push_back({entry.id, instance, entry.corrupt});
  }
  std::vector<std::vector<IdentityReport>> results(jobs.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(jobs.size())));

  auto work = [&](unsigned worker, std::exception_ptr& error) {
    try {
      Verifier plain(ctx, config.verify);
      VerifyOptions corrupted = config.verify;
      corrupted.corrupt = true;
      Verifier flipped(ctx, corrupted);
      for (std::size_t i = worker; i < jobs.size(); i += workers) {
        Verifier& v = jobs[i].corrupt ? flipped : plain;
        try {
          results[i] = run_instance(v, jobs[i].id, jobs[i].instance);
        } catch (const DomainError&) {
          IdentityReport report;
          report.id = jobs[i].id;
          report.parameters = jobs[i].instance;
          report.backend = ctx.backend();
          report.domain_ok = false;
          results[i] = {std::move(report)};
        }
      }
    } catch (...) {
      error = std::current_exception();
    }
  };

  std::vector<std::exception_ptr> errors(workers);
  if (workers == 1) {
    work(0, errors[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, std::ref(errors[w]));
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<IdentityReport> out;
  for (auto& group : results) {
    for (auto& r : group) out.push_back(std::move(r));
  }
  return out;
}

Json to_json(const Verdict& verdict) {
  Json j;
  switch (verdict.kind) {
    case VerdictKind::kExactEqual:
      j["kind"] = "exact_equal";
      break;
    case VerdictKind::kEqualToValuation:
      j["kind"] = "equal_to_valuation";
      j["valuation"] = verdict.valuation;
      break;
    case VerdictKind::kFail:
      j["kind"] = "fail";
      if (verdict.difference && verdict.difference->is_padic()) j["valuation"] = verdict.valuation;
      j["difference"] = verdict.difference ? to_json(*verdict.difference) : Json();
      j["reason"] = verdict.reason;
      break;
  }
  return j;
}

Json to_json(const IdentityReport& report) {
  Json j;
  j["identity"] = to_string(report.id);
  if (!report.reading.empty()) j["reading"] = report.reading;
  j["parameters"] = report.parameters;
  j["backend"] = to_string(report.backend);
  j["domain_ok"] = report.domain_ok;
  j["quarantined"] = report.quarantined;
  if (report.domain_ok) {
    j["lhs"] = report.lhs ? to_json(*report.lhs) : Json();
    j["rhs"] = report.rhs ? to_json(*report.rhs) : Json();
    j["verdict"] = report.verdict ? to_json(*report.verdict) : Json();
  }
  if (!report.oracle.empty()) {
    Json oracle = Json::array();
    for (const auto& c : report.oracle) {
      oracle.push_back({{"label", c.label},
                        {"level", c.level},
                        {"valuation", c.valuation},
                        {"converged", c.converged},
                        {"passed", c.passed}});
    }
    j["oracle"] = oracle;
  }
  if (!report.notes.empty()) j["notes"] = report.notes;
  j["passed"] = !report.failed();
  return j;
}

Json suite_summary(const std::vector<IdentityReport>& reports) {
  std::int64_t passed = 0, failed = 0, skipped = 0, quarantined = 0;
  for (const auto& r : reports) {
    if (!r.domain_ok) {
      ++skipped;
    } else if (r.quarantined) {
      ++quarantined;
    } else if (r.failed()) {
      ++failed;
    } else {
      ++passed;
    }
  }
  Json s;
  s["total"] = static_cast<std::int64_t>(reports.size());
  s["passed"] = passed;
  s["failed"] = failed;
  s["skipped"] = skipped;
  s["quarantined"] = quarantined;
  return Json{{"summary", s}};
}

}  // namespace qbern
