#include "qbern/serialize.hpp"

#include <vector>

#include "qbern/errors.hpp"

namespace qbern {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

Json coefficient_strings(const std::vector<mpq_class>& coeffs) {
  Json out = Json::array();
  for (const auto& c : coeffs) out.push_back(c.get_str());
  return out;
}

std::vector<mpq_class> coefficients_from(const Json& j) {
  if (!j.is_array()) throw ConfigError("coefficients must be an array");
  std::vector<mpq_class> out;
  for (const auto& c : j) {
    if (!c.is_string()) throw ConfigError("coefficients must be strings");
    out.push_back(parse_rational(c.get<std::string>()));
  }
  return out;
}

}  // namespace

Json to_json(const PadicNumber& x) {
  Json j;
  j["p"] = x.context().prime();
  if (x.is_zero()) {
    j["valuation"] = "inf";
  } else {
    j["valuation"] = x.valuation();
  }
  j["digits"] = x.unit_digits();
  j["precision"] = x.precision();
  return j;
}

PadicNumber padic_from_json(const Json& j, const PadicContext& ctx) {
  if (field<std::int64_t>(j, "p") != ctx.prime()) {
    throw ConfigError("p-adic value belongs to a different prime");
  }
  const auto digits = field<std::vector<std::int64_t>>(j, "digits");
  const auto precision = field<std::int64_t>(j, "precision");
  if (!j.contains("valuation")) throw ConfigError("missing field 'valuation'");
  const Json& v = j.at("valuation");
  if (v.is_string()) {
    if (v.get<std::string>() != "inf") throw ConfigError("valuation must be an integer or \"inf\"");
    return PadicNumber::from_digits(kInfiniteValuation, digits, precision, ctx);
  }
  if (!v.is_number_integer()) throw ConfigError("valuation must be an integer or \"inf\"");
  return PadicNumber::from_digits(v.get<std::int64_t>(), digits, precision, ctx);
}

Json to_json(const RationalFunction& f) {
  Json j;
  j["num"] = coefficient_strings(f.numerator());
  j["den"] = coefficient_strings(f.denominator());
  return j;
}

RationalFunction rational_function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
    throw ConfigError("rational function needs 'num' and 'den'");
  }
  try {
    return RationalFunction::from_coefficients(coefficients_from(j.at("num")),
                                               coefficients_from(j.at("den")));
  } catch (const DivisionByZero&) {
    throw ConfigError("rational function has a zero denominator");
  }
}

Json to_json(const Scalar& s) {
  return s.is_padic() ? to_json(s.padic()) : to_json(s.symbolic());
}

std::optional<std::int64_t> certified_precision(const Scalar& s) {
  if (s.is_padic()) return s.padic().precision();
  return std::nullopt;
}

std::string render(const Scalar& s) {
  return s.is_padic() ? to_json(s.padic()).dump() : s.symbolic().to_string();
}

Json to_json(const Integrand& f) {
  Json j;
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, BracketPower>) {
          j["type"] = "bracket_power";
          j["offset"] = g.offset;
          j["exponent"] = g.exponent;
        } else if constexpr (std::is_same_v<T, ReflectedPower>) {
          j["type"] = "reflected_power";
          j["offset"] = g.offset;
          j["exponent"] = g.exponent;
        } else if constexpr (std::is_same_v<T, BernsteinProduct>) {
          j["type"] = "bernstein_product";
          Json factors = Json::array();
          for (const auto& factor : g.factors) {
            factors.push_back({{"k", factor.k}, {"n", factor.n}, {"m", factor.m}});
          }
          j["factors"] = factors;
        } else {
          j["type"] = "custom";
          j["name"] = g.name;
        }
      },
      f);
  return j;
}

Integrand integrand_from_json(const Json& j) {
  const auto type = field<std::string>(j, "type");
  if (type == "bracket_power") {
    const std::int64_t offset = j.contains("offset") ? field<std::int64_t>(j, "offset") : 0;
    return BracketPower{offset, field<std::int64_t>(j, "exponent")};
  }
  if (type == "reflected_power") {
    const std::int64_t offset = j.contains("offset") ? field<std::int64_t>(j, "offset") : 1;
    return ReflectedPower{offset, field<std::int64_t>(j, "exponent")};
  }
  if (type == "bernstein_product") {
    BernsteinProduct product;
    const Json& factors = j.contains("factors") ? j.at("factors") : Json();
    if (!factors.is_array()) throw ConfigError("'factors' must be an array");
    for (const auto& factor : factors) {
      const std::int64_t m = factor.contains("m") ? field<std::int64_t>(factor, "m") : 1;
      product.factors.push_back(
          {field<std::int64_t>(factor, "k"), field<std::int64_t>(factor, "n"), m});
    }
    return product;
  }
  throw ConfigError("unknown integrand type '" + type + "'");
}

Json to_json(const RiemannResult& r) {
  Json j;
  j["value"] = to_json(r.value);
  j["level"] = r.level;
  j["stabilization_valuation"] = r.stabilization_valuation;
  j["differences"] = r.differences;
  if (auto precision = certified_precision(r.value)) {
    j["certified_precision"] = *precision;
  } else {
    j["certified_precision"] = nullptr;
  }
  return j;
}

mpq_class parse_rational(const std::string& text) {
  mpq_class value;
  if (text.empty() || value.set_str(text, 10) != 0) {
    throw ConfigError("not a rational number: '" + text + "'");
  }
  if (value.get_den() == 0) throw ConfigError("zero denominator in '" + text + "'");
  value.canonicalize();
  return value;
}

mpq_class parse_q_spec(const std::string& spec, std::int64_t prime) {
  if (spec == "1+p") return mpq_class(1 + static_cast<long>(prime));
  return parse_rational(spec);
}

QContext make_context(Backend backend, std::int64_t prime, std::int64_t precision,
                      const std::string& q_spec) {
  if (backend == Backend::kSymbolic) return QContext::symbolic();
  const PadicContext pctx(prime, precision);
  return QContext::padic(pctx, parse_q_spec(q_spec, prime));
}

}  // namespace qbern
