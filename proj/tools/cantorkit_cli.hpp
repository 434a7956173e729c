#pragma once

// Command-line front end. Kept in a header so the tests can drive it in-process.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cantorkit/io.hpp"
#include "cantorkit/presets.hpp"

namespace cantorkit::cli {

enum Exit : int { kOk = 0, kFails = 1, kIndeterminate = 2, kUsage = 3 };

struct Settings {
  std::string spec_path;
  std::string preset_name;
  std::vector<std::string> params;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> budget;
  std::optional<long> precision;
  std::string out_path;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ParsedSpec load(const Settings& s, bool validate) {
  if (s.spec_path.empty() == s.preset_name.empty()) throw UsageError("give exactly one of --spec or --preset");
  if (!s.spec_path.empty()) {
    if (!s.params.empty()) throw UsageError("--param only applies to --preset");
    return parse_spec(read_file(s.spec_path), validate);
  }
  PresetParams params;
  for (const auto& p : s.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + p + "'");
    params[p.substr(0, eq)] = p.substr(eq + 1);
  }
  try {
    return {preset(s.preset_name, params), {}};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

/// Flag, then spec file, then CANTORKIT_PRECISION, then the library default.
inline mpfr_prec_t resolve_precision(const Settings& s, const SpecOptions& o) {
  long bits = kDefaultPrecision;
  if (const char* env = std::getenv("CANTORKIT_PRECISION"); env && *env) {
    try {
      bits = std::stol(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("CANTORKIT_PRECISION is not an integer: ") + env);
    }
  }
  if (o.precision) bits = *o.precision;
  if (s.precision) bits = *s.precision;
  if (bits < 32 || bits > kMaxPrecision) throw UsageError("precision must lie in 32.." + std::to_string(kMaxPrecision));
  return static_cast<mpfr_prec_t>(bits);
}

struct Context {
  CantorSystem sys;
  CheckOptions check;
  std::size_t budget = kDefaultOracleBudget;
  bool budget_given = false;
};

inline Context make_context(const Settings& s, const ParsedSpec& spec) {
  Context c{spec.system, {}, kDefaultOracleBudget, false};
  c.check.precision = resolve_precision(s, spec.options);
  if (spec.options.depth) c.check.depth = *spec.options.depth;
  if (s.depth) c.check.depth = *s.depth;
  if (spec.options.budget) c.budget = *spec.options.budget, c.budget_given = true;
  if (s.budget) c.budget = *s.budget, c.budget_given = true;
  return c;
}

inline DimensionResult dim_of(const Context& c) { return dimension(c.sys, c.check.depth, c.check.precision); }

inline int worst(int a, int b) {
  // fails beats indeterminate beats ok
  if (a == kFails || b == kFails) return kFails;
  if (a == kIndeterminate || b == kIndeterminate) return kIndeterminate;
  return kOk;
}

inline int outcome_code(Outcome o) {
  switch (o) {
    case Outcome::kHolds: return kOk;
    case Outcome::kFails: return kFails;
    case Outcome::kIndeterminate: return kIndeterminate;
  }
  return kIndeterminate;
}

inline int lemma_code(LemmaVerdict v) {
  switch (v) {
    case LemmaVerdict::kPass: return kOk;
    case LemmaVerdict::kFail: return kFails;
    case LemmaVerdict::kIndeterminate: return kIndeterminate;
  }
  return kIndeterminate;
}

inline std::string dim_summary(const DimensionResult& d) {
  return "s = " + d.s.describe() + (d.exact ? " (exact)" : " (approximate, " + d.source + ")");
}

inline Json measure_fragment(const Context& c, const DimensionResult& d, int& code) {
  std::optional<MeasureResult> m;
  std::string refusal;
  try {
    m = measure_L(c.sys, d, c.check.depth, c.check.precision);
  } catch (const DomainError& e) {
    refusal = e.what();
    code = worst(code, kFails);
  }
  const HausdorffResult h = hausdorff_measure(c.sys, d, c.check);
  return measure_json(d, h, m, refusal);
}

inline Json check_fragment(const Context& c, const DimensionResult& d, const std::vector<AssumptionKind>& kinds,
                           int& code, std::ostream& err) {
  Json arr = Json::array();
  for (auto kind : kinds) {
    const AssumptionReport r = check_assumption(c.sys, d, kind, c.check);
    code = worst(code, outcome_code(r.outcome));
    err << to_string(kind) << ": " << to_string(r.outcome) << "\n";
    arr.push_back(assumption_json(r));
  }
  return arr;
}

/// Deepest stage within the configured depth whose interval count fits the budget.
inline std::size_t oracle_stage(const Context& c) {
  std::size_t depth = c.check.depth ? c.check.depth : default_depth(c.sys);
  if (c.sys.is_finite()) depth = std::min(depth, c.sys.max_stage());
  std::size_t k = 0;
  BigInt mu(1);
  while (k < depth) {
    mu *= static_cast<unsigned long>(c.sys.stage_at(k + 1).m());
    if (mu > BigInt(static_cast<unsigned long>(c.budget))) break;
    ++k;
  }
  return k;
}

inline void write_output(const Settings& s, const std::string& text, std::ostream& out) {
  if (s.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(s.out_path);
  if (!f) throw UsageError("cannot write " + s.out_path);
  f << text;
}

/// Runs one invocation. Returns the process exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of linear Cantor sets", "cantorkit"};
  app.require_subcommand(1);
  Settings s;
  app.add_option("--spec", s.spec_path, "YAML system spec");
  app.add_option("--preset", s.preset_name, "named system instead of a spec file");
  app.add_option("--param", s.params, "preset parameter key=value (repeatable)");
  app.add_option("--depth", s.depth, "stage depth for checks");
  app.add_option("--budget", s.budget, "maximum basic intervals for enumeration");
  app.add_option("--precision", s.precision, "starting precision in bits (env CANTORKIT_PRECISION)");
  app.add_option("--out", s.out_path, "write the report here instead of stdout");

  auto* validate = app.add_subcommand("validate", "check the system against the construction rules");
  auto* dim = app.add_subcommand("dim", "Hausdorff dimension");
  auto* measure = app.add_subcommand("measure", "measure value L and the Hausdorff measure");
  std::string kind_text;
  auto* check = app.add_subcommand("check", "decide a separation assumption");
  check->add_option("kind", kind_text, "assumption kind or 'all'")->required();
  std::size_t k = 0;
  auto* lemma = app.add_subcommand("verify-lemma", "pairwise simple-interval inequality at stage k");
  lemma->add_option("k", k)->required();
  std::optional<std::string> delta_text;
  auto* cover = app.add_subcommand("cover", "cheapest cover by consecutive blocks at stage k");
  cover->add_option("k", k)->required();
  cover->add_option("--delta", delta_text, "exclude blocks at least this long");
  std::size_t k_lo = 0;
  std::size_t k_hi = 0;
  auto* table = app.add_subcommand("table", "basic and optimal cover costs for a range of stages");
  table->add_option("k_lo", k_lo)->required();
  table->add_option("k_hi", k_hi)->required();
  auto* render = app.add_subcommand("render", "SVG of stages 0..k_max");
  render->add_option("k_max", k)->required();
  auto* report = app.add_subcommand("report", "everything at the configured depth");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (validate->parsed()) {
      const ParsedSpec spec = load(s, false);
      const ValidationResult v = validate_system(spec.system);
      for (const auto& x : v.violations)
        err << "stage " << x.stage << ": " << x.rule << (x.detail.empty() ? "" : " (" + x.detail + ")") << "\n";
      write_output(s, emit_report(spec.system, {{"validation", validation_json(v)}}).dump(2) + "\n", out);
      return v.ok() ? kOk : kFails;
    }

    const ParsedSpec spec = load(s, true);
    Context c = make_context(s, spec);
    int code = kOk;
    std::vector<std::pair<std::string, Json>> frags;

    if (dim->parsed()) {
      const DimensionResult d = dim_of(c);
      err << dim_summary(d) << "\n";
      Json j = dimension_json(d, c.check.precision);
      j["summary"] = dim_summary(d);
      frags.emplace_back("dimension", j);
    } else if (measure->parsed()) {
      const DimensionResult d = dim_of(c);
      frags.emplace_back("measure", measure_fragment(c, d, code));
    } else if (check->parsed()) {
      std::vector<AssumptionKind> kinds;
      if (kind_text == "all") {
        kinds = all_assumption_kinds();
      } else if (const auto kind = parse_assumption_kind(kind_text)) {
        kinds.push_back(*kind);
      } else {
        throw UsageError("unknown assumption kind '" + kind_text + "'");
      }
      const DimensionResult d = dim_of(c);
      frags.emplace_back("assumptions", check_fragment(c, d, kinds, code, err));
    } else if (lemma->parsed()) {
      LemmaOptions opt;
      opt.budget = c.budget;
      opt.max_precision = std::max<mpfr_prec_t>(c.check.max_precision, c.check.precision);
      const LemmaReport r = verify_cover_lemma(c.sys, k, dim_of(c), opt);
      code = lemma_code(r.verdict);
      err << "stage " << k << ": " << to_string(r.verdict) << ", " << r.pairs << " pairs, " << r.violation_count
          << " violations\n";
      frags.emplace_back("lemma", lemma_json(r));
    } else if (cover->parsed()) {
      CoverOptions opt;
      opt.budget = c.budget;
      opt.precision = c.check.precision;
      if (delta_text) {
        try {
          opt.delta = Rational::parse(*delta_text);
        } catch (const std::exception&) {
          throw UsageError("--delta is not a rational: " + *delta_text);
        }
      }
      frags.emplace_back("cover", cover_json(min_cover_dp(c.sys, k, dim_of(c), opt)));
    } else if (table->parsed()) {
      CoverOptions opt;
      opt.budget = c.budget;
      opt.precision = c.check.precision;
      frags.emplace_back("table", table_json(measure_table(c.sys, k_lo, k_hi, dim_of(c), opt)));
    } else if (render->parsed()) {
      write_output(s, render_svg(c.sys, k, c.budget_given ? c.budget : kDefaultRenderBudget), out);
      return kOk;
    } else if (report->parsed()) {
      const DimensionResult d = dim_of(c);
      frags.emplace_back("validation", validation_json(validate_system(c.sys)));
      Json dj = dimension_json(d, c.check.precision);
      dj["summary"] = dim_summary(d);
      frags.emplace_back("dimension", dj);
      int measure_code = kOk;
      frags.emplace_back("measure", measure_fragment(c, d, measure_code));
      frags.emplace_back("assumptions", check_fragment(c, d, all_assumption_kinds(), code, err));
      if (const std::size_t ks = oracle_stage(c); ks > 0) {
        LemmaOptions lo;
        lo.budget = c.budget;
        CoverOptions co;
        co.budget = c.budget;
        co.precision = c.check.precision;
        Json oracle;
        oracle["stage"] = ks;
        oracle["lemma"] = lemma_json(verify_cover_lemma(c.sys, ks, d, lo));
        oracle["cover"] = cover_json(min_cover_dp(c.sys, ks, d, co));
        oracle["table"] = table_json(measure_table(c.sys, 1, ks, d, co));
        frags.emplace_back("oracle", oracle);
      }
    }
    write_output(s, emit_report(c.sys, frags).dump(2) + "\n", out);
    return code;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), out, err);
}

}  // namespace cantorkit::cli
