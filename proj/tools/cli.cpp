#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qbern/bernstein.hpp"
#include "qbern/carlitz.hpp"
#include "qbern/errors.hpp"
#include "qbern/identities.hpp"
#include "qbern/integral.hpp"
#include "qbern/serialize.hpp"

namespace qbern::cli {

namespace {

struct Settings {
  std::int64_t prime = 3;
  std::int64_t precision = 40;
  std::string q = "1+p";
  std::string backend;  // empty: the subcommand's default
  std::int64_t target = 8;
  std::int64_t level_cap = 0;
  std::string format = "json";
  std::string out_path;
  unsigned threads = 1;
};

Backend backend_of(const Settings& s, Backend fallback) {
  if (s.backend.empty()) return fallback;
  return s.backend == "padic" ? Backend::kPadic : Backend::kSymbolic;
}

QContext context_of(const Settings& s, Backend fallback) {
  return make_context(backend_of(s, fallback), s.prime, s.precision, s.q);
}

Argument parse_argument(const std::string& text, const QContext& ctx) {
  const mpq_class value = parse_rational(text);
  if (value.get_den() == 1 && value.get_num().fits_slong_p()) {
    return static_cast<std::int64_t>(value.get_num().get_si());
  }
  if (!ctx.is_padic()) throw ConfigError("non-integer x needs the padic backend");
  return PadicNumber::from_rational(value, ctx.padic_context());
}

std::string csv_cell(const Scalar& s) {
  const std::string text = render(s);
  if (text.find_first_of(",\"") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

// A deliberately rough integrand: x -> hash(x) as an integer. It has no
// reason to converge and exists to exercise the level cap.
Scalar residue_hash(const SamplePoint& point, const QContext& ctx) {
  std::uint64_t h = static_cast<std::uint64_t>(point.x) * 0x9E3779B97F4A7C15ull;
  h ^= h >> 29;
  return ctx.constant(static_cast<std::int64_t>(h % 1000003));
}

Integrand integrand_of(const std::string& kind, const std::string& json, std::int64_t offset,
                       std::int64_t exponent, std::int64_t k, std::int64_t n) {
  if (!json.empty()) {
    Json parsed;
    try {
      parsed = Json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed integrand JSON: ") + e.what());
    }
    return integrand_from_json(parsed);
  }
  if (kind == "constant") return BracketPower{0, 0};
  if (kind == "bracket_power") return BracketPower{offset, exponent};
  if (kind == "reflected_power") return ReflectedPower{offset, exponent};
  if (kind == "bernstein") return BernsteinProduct{{{k, n, 1}}};
  if (kind == "residue_hash") return CustomIntegrand{"residue_hash", residue_hash};
  throw ConfigError("unknown integrand kind '" + kind + "'");
}

Json value_json(const char* key, std::int64_t index, const Scalar& value) {
  Json j;
  j[key] = index;
  j["backend"] = to_string(value.backend());
  j["value"] = to_json(value);
  if (auto precision = certified_precision(value)) {
    j["certified_precision"] = *precision;
  } else {
    j["certified_precision"] = nullptr;
  }
  return j;
}

void emit_value(std::ostream& out, const Settings& s, const Json& j, const Scalar& value) {
  if (s.format == "csv") {
    std::string header;
    std::string row;
    for (const auto& [key, v] : j.items()) {
      if (key == "value" || key == "certified_precision" || key == "backend") continue;
      header += key + ",";
      row += (v.is_string() ? v.get<std::string>() : v.dump()) + ",";
    }
    out << header << "value\n" << row << csv_cell(value) << "\n";
  } else {
    out << j.dump() << "\n";
  }
}

int cmd_table(std::ostream& out, const Settings& s, const std::string& kind, std::int64_t from,
              std::int64_t to, const std::string& x_text) {
  const QContext ctx = context_of(s, Backend::kSymbolic);
  CarlitzTable table(ctx);
  const bool csv = s.format == "csv";
  std::vector<std::string> header;
  if (kind == "beta") {
    header = {"n", "value"};
    if (!ctx.is_padic()) header.push_back("q_equals_1");
  } else if (kind == "bernstein") {
    header = {"n", "k", "x", "value"};
  } else if (kind == "integral") {
    header = {"n", "k", "value"};
  } else {
    throw ConfigError("table kind must be beta, bernstein or integral");
  }
  if (csv) {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
  }
  Json rows = Json::array();
  auto emit = [&](std::vector<std::string> cells, Json row) {
    if (csv) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << "\n";
    } else {
      rows.push_back(std::move(row));
    }
  };
  for (std::int64_t n = std::max<std::int64_t>(from, 0); n <= to; ++n) {
    if (kind == "beta") {
      const Scalar b = table.beta(n);
      std::vector<std::string> cells{std::to_string(n), csv_cell(b)};
      Json row{{"n", n}, {"value", to_json(b)}};
      if (!ctx.is_padic()) {
        try {
          const mpq_class at_one = eval_at_one(b.symbolic());
          cells.push_back(at_one.get_str());
          row["q_equals_1"] = at_one.get_str();
        } catch (const PoleAtOne&) {
          cells.push_back("pole");
          row["q_equals_1"] = "pole";
        }
      }
      emit(cells, row);
    } else if (kind == "bernstein") {
      const Argument x = parse_argument(x_text, ctx);
      for (std::int64_t k = 0; k <= n; ++k) {
        const Scalar v = bernstein_eval(BernsteinSpec(k, n), x, ctx);
        emit({std::to_string(n), std::to_string(k), x_text, csv_cell(v)},
             {{"n", n}, {"k", k}, {"x", x_text}, {"value", to_json(v)}});
      }
    } else {
      for (std::int64_t k = 0; k <= n; ++k) {
        const Scalar v = bernstein_integral(k, n, table, BernsteinRoute::kDirect);
        emit({std::to_string(n), std::to_string(k), csv_cell(v)},
             {{"n", n}, {"k", k}, {"value", to_json(v)}});
      }
    }
  }
  if (!csv) out << Json{{"kind", kind}, {"columns", header}, {"rows", rows}}.dump() << "\n";
  return kOk;
}

int emit_reports(std::ostream& out, const Settings& s, const std::vector<IdentityReport>& reports) {
  bool failed = false;
  if (s.format == "csv") {
    out << "identity,reading,parameters,backend,domain_ok,quarantined,verdict,valuation,passed\n";
    for (const auto& r : reports) {
      std::string verdict = "skipped";
      std::string valuation;
      if (r.verdict) {
        switch (r.verdict->kind) {
          case VerdictKind::kExactEqual:
            verdict = "exact_equal";
            break;
          case VerdictKind::kEqualToValuation:
            verdict = "equal_to_valuation";
            valuation = std::to_string(r.verdict->valuation);
            break;
          case VerdictKind::kFail:
            verdict = "fail";
            if (r.backend == Backend::kPadic) valuation = std::to_string(r.verdict->valuation);
            break;
        }
      }
      std::string params = r.parameters.dump();
      std::string quoted = "\"";
      for (char c : params) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      out << to_string(r.id) << "," << r.reading << "," << quoted << "\"," << to_string(r.backend)
          << "," << (r.domain_ok ? "true" : "false") << "," << (r.quarantined ? "true" : "false")
          << "," << verdict << "," << valuation << "," << (r.failed() ? "false" : "true") << "\n";
    }
  } else {
    for (const auto& r : reports) out << to_json(r).dump() << "\n";
    out << suite_summary(reports).dump() << "\n";
  }
  for (const auto& r : reports) failed = failed || r.failed();
  return failed ? kIdentityViolation : kOk;
}

SuiteConfig suite_base(const Settings& s, Backend fallback, bool crosscheck) {
  SuiteConfig config;
  config.backend = backend_of(s, fallback);
  config.prime = s.prime;
  config.precision = s.precision;
  config.q = s.q;
  config.verify.target = s.target;
  config.verify.integrate.level_cap = s.level_cap;
  config.verify.riemann_crosscheck = crosscheck;
  config.threads = s.threads;
  return config;
}

int cmd_verify(std::ostream& out, const Settings& s, const std::string& grid_path,
               const std::string& identity, const std::string& instance, bool crosscheck,
               bool corrupt) {
  SuiteConfig config = suite_base(s, Backend::kSymbolic, crosscheck);
  if (!grid_path.empty()) {
    std::ifstream in(grid_path);
    if (!in) throw ConfigError("cannot open grid file '" + grid_path + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed grid file: ") + e.what());
    }
    if (!j.contains("grid")) j["grid"] = "default";
    config = parse_suite_config(j, config);
  } else if (!identity.empty()) {
    Json j;
    try {
      j = Json::parse(instance.empty() ? "{}" : instance);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed instance: ") + e.what());
    }
    config = parse_suite_config(
        Json{{"grid", Json::array({Json{{"identity", identity}, {"instances", Json::array({j})}}})}},
        config);
  } else {
    config.grid = default_grid();
  }
  if (corrupt) {
    for (auto& entry : config.grid) entry.corrupt = true;
  }
  return emit_reports(out, s, run_suite(config));
}

// Clean symbolic and p-adic runs must pass; a corrupted run must be caught.
int cmd_selftest(std::ostream& out, const Settings& s) {
  bool ok = true;
  auto line = [&](const std::string& name, bool passed) {
    out << (passed ? "PASS " : "FAIL ") << name << "\n";
    ok = ok && passed;
  };
  auto failures = [](const std::vector<IdentityReport>& reports) {
    return std::count_if(reports.begin(), reports.end(),
                         [](const IdentityReport& r) { return r.failed(); });
  };

  std::vector<GridEntry> grid = default_grid();
  grid.erase(std::remove_if(grid.begin(), grid.end(),
                            [](const GridEntry& e) { return e.id == IdentityId::kThm1; }),
             grid.end());

  SuiteConfig symbolic = suite_base(s, Backend::kSymbolic, false);
  symbolic.backend = Backend::kSymbolic;
  symbolic.grid = grid;
  line("symbolic default grid", failures(run_suite(symbolic)) == 0);

  SuiteConfig padic = suite_base(s, Backend::kPadic, false);
  padic.backend = Backend::kPadic;
  padic.grid = grid;
  line("padic default grid (p=" + std::to_string(s.prime) + ")", failures(run_suite(padic)) == 0);

  SuiteConfig corrupted = symbolic;
  corrupted.grid = {GridEntry{IdentityId::kProp2, {Json{{"n", 3}}}, true}};
  line("corrupted identity is detected", failures(run_suite(corrupted)) == 1);

  const QContext ctx = make_context(Backend::kPadic, s.prime, s.precision, s.q);
  IntegrateOptions options;
  options.target = s.target;
  const RiemannResult one = integrate(BracketPower{0, 0}, ctx, options);
  line("total measure is one",
       agreement_valuation(one.value.padic(), ctx.one().padic()) == one.value.padic().precision());
  return ok ? kOk : kIdentityViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-Bernoulli numbers, q-Bernstein polynomials and the p-adic q-integral", "qbern"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  std::int64_t threads = 1;
  app.add_option("--p", s.prime, "Prime p (>= 3)");
  app.add_option("--precision", s.precision, "Working precision K in base-p digits");
  app.add_option("--q", s.q, "q as a rational \"a/b\" or the token \"1+p\"");
  app.add_option("--backend", s.backend, "padic or symbolic")
      ->check(CLI::IsMember({"padic", "symbolic"}));
  app.add_option("--target-valuation", s.target, "Required agreement valuation");
  app.add_option("--level-cap", s.level_cap, "Largest Riemann level (0 = per-prime default)");
  app.add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", s.out_path, "Write results to this file");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::int64_t n = 0;
  std::int64_t k = 0;
  std::string x_text = "0";

  auto* beta_cmd = app.add_subcommand("beta", "Carlitz q-Bernoulli number beta_{n,q}");
  beta_cmd->add_option("--n", n, "Index")->required();
  auto* xi_cmd = app.add_subcommand("xi", "Carlitz number xi_n");
  xi_cmd->add_option("--n", n, "Index")->required();
  auto* poly_cmd = app.add_subcommand("beta-poly", "q-Bernoulli polynomial beta_{n,q}(x)");
  poly_cmd->add_option("--n", n, "Degree")->required();
  poly_cmd->add_option("--x", x_text, "Argument (integer, or rational in padic mode)");
  auto* bern_cmd = app.add_subcommand("bernstein", "q-Bernstein polynomial B_{k,n}(x,q)");
  bern_cmd->add_option("--k", k, "Index k")->required();
  bern_cmd->add_option("--n", n, "Degree n")->required();
  bern_cmd->add_option("--x", x_text, "Argument");

  std::string kind = "bracket_power";
  std::string integrand_json;
  std::int64_t offset = 0;
  std::int64_t exponent = 0;
  std::uint64_t max_terms = RiemannOptions{}.max_terms;
  auto* int_cmd = app.add_subcommand("integrate", "p-adic q-integral by Riemann sums");
  int_cmd->add_option("--kind", kind,
                      "constant, bracket_power, reflected_power, bernstein or residue_hash");
  int_cmd->add_option("--integrand", integrand_json, "Integrand as JSON");
  int_cmd->add_option("--offset", offset, "Bracket offset");
  int_cmd->add_option("--exponent", exponent, "Bracket exponent");
  int_cmd->add_option("--k", k, "Bernstein k");
  int_cmd->add_option("--n", n, "Bernstein n");
  int_cmd->add_option("--max-terms", max_terms, "Largest p^N to enumerate");

  std::string grid_path;
  std::string identity;
  std::string instance;
  bool crosscheck = false;
  bool corrupt = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run the identity suite");
  verify_cmd->add_option("--grid", grid_path, "Grid file (JSON); default grid if omitted");
  verify_cmd->add_option("--identity", identity, "Single identity, e.g. PROP2");
  verify_cmd->add_option("--instance", instance, "Instance parameters as JSON");
  verify_cmd->add_flag("--riemann-crosscheck", crosscheck, "Cross-check against Riemann runs");
  verify_cmd->add_flag("--corrupt", corrupt, "Flip the sign of every right-hand side");

  std::string table_kind = "beta";
  std::int64_t from = 0;
  std::int64_t to = 5;
  auto* table_cmd = app.add_subcommand("table", "Tabulate beta, bernstein or integral values");
  table_cmd->add_option("--kind", table_kind, "beta, bernstein or integral")
      ->check(CLI::IsMember({"beta", "bernstein", "integral"}));
  table_cmd->add_option("--from", from, "First n");
  table_cmd->add_option("--to", to, "Last n");
  table_cmd->add_option("--x", x_text, "Argument for bernstein tables");

  auto* selftest_cmd = app.add_subcommand("selftest", "Quick end-to-end health check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  s.threads = static_cast<unsigned>(threads);

  std::ofstream file;
  if (!s.out_path.empty()) {
    file.open(s.out_path);
    if (!file) {
      err << "error: cannot open '" << s.out_path << "' for writing\n";
      return kUsageError;
    }
  }
  std::ostream& sink = s.out_path.empty() ? out : file;

  try {
    if (*beta_cmd || *xi_cmd) {
      CarlitzTable table(context_of(s, Backend::kSymbolic));
      const Scalar v = *beta_cmd ? table.beta(n) : table.xi(n);
      emit_value(sink, s, value_json("n", n, v), v);
      return kOk;
    }
    if (*poly_cmd) {
      CarlitzTable table(context_of(s, Backend::kSymbolic));
      const Scalar v = beta_poly(n, parse_argument(x_text, table.context()), table);
      Json j = value_json("n", n, v);
      j["x"] = x_text;
      emit_value(sink, s, j, v);
      return kOk;
    }
    if (*bern_cmd) {
      const QContext ctx = context_of(s, Backend::kSymbolic);
      const Scalar v = bernstein_eval(BernsteinSpec(k, n), parse_argument(x_text, ctx), ctx);
      Json j = value_json("n", n, v);
      j["k"] = k;
      j["x"] = x_text;
      emit_value(sink, s, j, v);
      return kOk;
    }
    if (*int_cmd) {
      const QContext ctx = context_of(s, Backend::kPadic);
      const Integrand f = integrand_of(kind, integrand_json, offset, exponent, k, n);
      IntegrateOptions options;
      options.target = s.target;
      options.level_cap = s.level_cap;
      options.riemann.threads = s.threads;
      options.riemann.max_terms = max_terms;
      try {
        Json j = to_json(integrate(f, ctx, options));
        j["integrand"] = to_json(f);
        sink << j.dump() << "\n";
      } catch (const MaxLevelExceeded& e) {
        Json j = to_json(e.best());
        j["integrand"] = to_json(f);
        j["error"] = "max_level_exceeded";
        sink << j.dump() << "\n";
        err << "error: " << e.what() << "\n";
        return kBudgetExceeded;
      }
      return kOk;
    }
    if (*verify_cmd) {
      return cmd_verify(sink, s, grid_path, identity, instance, crosscheck, corrupt);
    }
    if (*table_cmd) return cmd_table(sink, s, table_kind, from, to, x_text);
    if (*selftest_cmd) return cmd_selftest(sink, s);
  } catch (const PrecisionExhausted& e) {
    err << "error: precision exhausted: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const BudgetExceeded& e) {
    err << "error: budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const RequestedPrecisionNotCertified& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qbern::cli
