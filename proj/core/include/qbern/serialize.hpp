#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qbern/integral.hpp"
#include "qbern/padic.hpp"
#include "qbern/qfield.hpp"
#include "qbern/rational_function.hpp"
#include "qbern/scalar.hpp"

namespace qbern {

/// Insertion-ordered JSON so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

/// {"p", "valuation": int|"inf", "digits": [...little-endian...], "precision"}
Json to_json(const PadicNumber& x);
/// Throws ConfigError on schema violations or a prime that differs from ctx.
PadicNumber padic_from_json(const Json& j, const PadicContext& ctx);

/// {"num": ["c0", "c1", ...], "den": [...]}, rational coefficients as "a/b".
Json to_json(const RationalFunction& f);
RationalFunction rational_function_from_json(const Json& j);

Json to_json(const Scalar& s);
/// Absolute precision of a p-adic scalar; nullopt for symbolic ones.
std::optional<std::int64_t> certified_precision(const Scalar& s);
/// One-line rendering: "(num)/(den)" for symbolic values, the JSON text for
/// p-adic ones.
std::string render(const Scalar& s);

/// {"type": "bracket_power"|"reflected_power"|"bernstein_product", ...}.
/// Custom integrands serialize as {"type": "custom", "name": ...}.
Json to_json(const Integrand& f);
/// Parses the structured integrand types. Throws ConfigError otherwise.
Integrand integrand_from_json(const Json& j);

/// {"value", "level", "stabilization_valuation", "differences", "certified_precision"}
Json to_json(const RiemannResult& r);

/// Parses "a/b", an integer, or the token "1+p".
mpq_class parse_q_spec(const std::string& spec, std::int64_t prime);
mpq_class parse_rational(const std::string& text);

/// Builds a context from command-line style settings.
QContext make_context(Backend backend, std::int64_t prime, std::int64_t precision,
                      const std::string& q_spec);

}  // namespace qbern
