#pragma once

// Spec files (YAML), JSON reports and SVG stage diagrams.

#include <yaml-cpp/yaml.h>

#include <nlohmann/json.hpp>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cantorkit/analysis.hpp"
#include "cantorkit/geometry.hpp"
#include "cantorkit/oracle.hpp"
#include "cantorkit/system.hpp"

namespace cantorkit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "cantorkit.report/1";
inline constexpr std::size_t kDefaultRenderBudget = 4096;

/// Parse failure; line and column are 1-based, zero when unknown.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& msg, int line = 0, int column = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg
                                    : msg),
        line_(line),
        column_(column) {}
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct SpecOptions {
  std::optional<std::size_t> depth;
  std::optional<std::size_t> budget;
  std::optional<long> precision;
  friend bool operator==(const SpecOptions&, const SpecOptions&) = default;
};

struct ParsedSpec {
  CantorSystem system;
  SpecOptions options;
};

namespace detail {

[[noreturn]] inline void spec_fail(const YAML::Node& at, const std::string& msg) {
  const YAML::Mark m = at.Mark();
  if (m.is_null()) throw SpecError(msg);
  throw SpecError(msg, m.line + 1, m.column + 1);
}

inline Rational yaml_rational(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) spec_fail(n, what + " must be a rational literal");
  try {
    return Rational::parse(n.Scalar());
  } catch (const std::exception&) {
    spec_fail(n, what + " is not a rational literal: '" + n.Scalar() + "'");
  }
}

inline std::size_t yaml_count(const YAML::Node& n, const std::string& what) {
  const Rational r = yaml_rational(n, what);
  if (!r.is_integer() || r.sign() < 0 || !r.num().fits_ulong_p()) spec_fail(n, what + " must be a nonnegative integer");
  return r.num().get_ui();
}

inline void check_keys(const YAML::Node& map, std::initializer_list<const char*> allowed, const std::string& what) {
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) spec_fail(kv.first, "unknown key '" + key + "' in " + what);
  }
}

inline Stage yaml_stage(const YAML::Node& n) {
  if (!n.IsMap()) spec_fail(n, "stage must be a mapping with beta and digits");
  check_keys(n, {"beta", "digits"}, "stage");
  if (!n["beta"]) spec_fail(n, "stage is missing beta");
  if (!n["digits"]) spec_fail(n, "stage is missing digits");
  const Rational beta = yaml_rational(n["beta"], "beta");
  const YAML::Node d = n["digits"];
  if (d.IsSequence()) {
    std::vector<Rational> digits;
    for (const auto& x : d) digits.push_back(yaml_rational(x, "digit"));
    for (std::size_t j = 1; j < digits.size(); ++j)
      if (digits[j] <= digits[j - 1]) spec_fail(d[j], "digits must be strictly increasing");
    return Stage(beta, digits);
  }
  if (d.IsMap()) {
    check_keys(d, {"first", "step", "count"}, "digit progression");
    if (!d["first"] || !d["step"] || !d["count"]) spec_fail(d, "digit progression needs first, step and count");
    const Rational step = yaml_rational(d["step"], "step");
    if (step.sign() <= 0) spec_fail(d["step"], "step must be positive");
    return Stage(beta, DigitSet::progression(yaml_rational(d["first"], "first"), step, yaml_count(d["count"], "count")));
  }
  spec_fail(d, "digits must be a list or a {first, step, count} progression");
}

inline std::vector<Stage> yaml_stages(const YAML::Node& n, std::vector<YAML::Mark>& marks) {
  if (!n.IsSequence()) spec_fail(n, "expected a list of stages");
  std::vector<Stage> out;
  for (const auto& s : n) {
    out.push_back(yaml_stage(s));
    marks.push_back(s.Mark());
  }
  return out;
}

/// "p/q", or "[c*]log(P)/log(Q)[+r]".
inline LogExpr parse_log_expr(const std::string& text) {
  static const std::regex form(R"(^\s*(?:([^*\s]+)\*)?log\(([^)]+)\)/log\(([^)]+)\)(?:\+(\S+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, form)) {
    LogExpr e = log_ratio(Rational::parse(m[2].str()), Rational::parse(m[3].str()));
    if (m[1].matched || m[4].matched)
      e = e.affine(m[1].matched ? Rational::parse(m[1].str()) : Rational(1),
                   m[4].matched ? Rational::parse(m[4].str()) : Rational(0));
    return e;
  }
  return LogExpr(Rational::parse(text));
}

}  // namespace detail

/// Parses a YAML spec. Syntax and semantic errors carry the offending position;
/// semantic errors name the violated rule.
inline ParsedSpec parse_spec(const std::string& text, bool validate = true) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw SpecError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  if (!root.IsMap()) throw SpecError("spec must be a mapping with prefix and tail", 1, 1);
  detail::check_keys(root, {"label", "prefix", "tail", "dimension", "options"}, "spec");

  std::vector<YAML::Mark> marks;
  std::vector<Stage> prefix;
  if (root["prefix"] && !root["prefix"].IsNull()) prefix = detail::yaml_stages(root["prefix"], marks);

  if (!root["tail"]) detail::spec_fail(root, "spec is missing tail");
  const YAML::Node tn = root["tail"];
  if (!tn.IsMap()) detail::spec_fail(tn, "tail must be a mapping with kind and stages");
  detail::check_keys(tn, {"kind", "stages"}, "tail");
  if (!tn["kind"]) detail::spec_fail(tn, "tail is missing kind");
  const auto kind = parse_tail_kind(tn["kind"].as<std::string>());
  if (!kind) detail::spec_fail(tn["kind"], "tail kind must be finite, constant or periodic");
  TailRule tail;
  tail.kind = *kind;
  if (tn["stages"] && !tn["stages"].IsNull()) tail.stages = detail::yaml_stages(tn["stages"], marks);

  CantorSystem sys(std::move(prefix), std::move(tail), root["label"] ? root["label"].as<std::string>() : "");

  if (const YAML::Node dn = root["dimension"]) {
    detail::check_keys(dn, {"value", "source"}, "dimension");
    if (!dn["value"]) detail::spec_fail(dn, "dimension is missing value");
    try {
      sys.set_declared_dimension({detail::parse_log_expr(dn["value"].as<std::string>()),
                                  dn["source"] ? dn["source"].as<std::string>() : "declared_limit"});
    } catch (const std::exception& e) {
      detail::spec_fail(dn["value"], std::string("bad dimension value: ") + e.what());
    }
  }

  ParsedSpec out{std::move(sys), {}};
  if (const YAML::Node on = root["options"]) {
    detail::check_keys(on, {"depth", "budget", "precision"}, "options");
    if (on["depth"]) out.options.depth = detail::yaml_count(on["depth"], "depth");
    if (on["budget"]) out.options.budget = detail::yaml_count(on["budget"], "budget");
    if (on["precision"]) out.options.precision = static_cast<long>(detail::yaml_count(on["precision"], "precision"));
  }

  if (!validate) return out;
  const ValidationResult v = validate_system(out.system);
  if (!v.ok()) {
    const Violation& first = v.violations.front();
    std::string msg = first.rule;
    if (first.stage > 0) msg += " (stage " + std::to_string(first.stage) + (first.detail.empty() ? "" : ": " + first.detail) + ")";
    // Stages beyond the listed ones repeat the tail; point at the listed one.
    const std::size_t listed = out.system.prefix().size() + out.system.tail().stages.size();
    if (first.stage > 0 && first.stage <= listed && first.stage <= marks.size()) {
      const YAML::Mark& m = marks[first.stage - 1];
      throw SpecError(msg, m.line + 1, m.column + 1);
    }
    throw SpecError(msg);
  }
  return out;
}

namespace detail {

inline void emit_stage(YAML::Emitter& out, const Stage& st) {
  out << YAML::BeginMap << YAML::Key << "beta" << YAML::Value << st.beta().short_str() << YAML::Key << "digits"
      << YAML::Value;
  if (st.digits().is_progression()) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "first" << YAML::Value << st.digits().first().short_str()
        << YAML::Key << "step" << YAML::Value << st.digits().step().short_str() << YAML::Key << "count" << YAML::Value
        << st.m() << YAML::EndMap;
  } else {
    out << YAML::Flow << YAML::BeginSeq;
    for (const auto& d : st.digits().explicit_digits()) out << d.short_str();
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;
}

}  // namespace detail

inline std::string serialize_spec(const CantorSystem& sys, const SpecOptions& options = {}) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "label" << YAML::Value << YAML::DoubleQuoted << sys.label();
  out << YAML::Key << "prefix" << YAML::Value << YAML::BeginSeq;
  for (const auto& st : sys.prefix()) detail::emit_stage(out, st);
  out << YAML::EndSeq;
  out << YAML::Key << "tail" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << to_string(sys.tail().kind);
  out << YAML::Key << "stages" << YAML::Value << YAML::BeginSeq;
  for (const auto& st : sys.tail().stages) detail::emit_stage(out, st);
  out << YAML::EndSeq << YAML::EndMap;
  if (const auto& d = sys.declared_dimension()) {
    out << YAML::Key << "dimension" << YAML::Value << YAML::BeginMap << YAML::Key << "value" << YAML::Value
        << d->value.canonical_str() << YAML::Key << "source" << YAML::Value << d->source << YAML::EndMap;
  }
  if (options.depth || options.budget || options.precision) {
    out << YAML::Key << "options" << YAML::Value << YAML::BeginMap;
    if (options.depth) out << YAML::Key << "depth" << YAML::Value << *options.depth;
    if (options.budget) out << YAML::Key << "budget" << YAML::Value << *options.budget;
    if (options.precision) out << YAML::Key << "precision" << YAML::Value << *options.precision;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

// ---------------------------------------------------------------------------
// JSON report fragments

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const CertInterval& c) {
  Json j;
  j["lo"] = c.lo.str();
  j["hi"] = c.hi.str();
  j["bits"] = c.bits;
  j["approx"] = to_decimal((c.lo + c.hi) / Rational(2), 12);
  return j;
}

inline Json to_json(const Word& w) { return w.indices; }

inline Json stage_json(const Stage& st) {
  Json j;
  j["beta"] = st.beta().str();
  if (st.digits().is_progression()) {
    j["digits"] = {{"first", st.digits().first().str()}, {"step", st.digits().step().str()}, {"count", st.m()}};
  } else {
    Json d = Json::array();
    for (const auto& x : st.digits().explicit_digits()) d.push_back(x.str());
    j["digits"] = d;
  }
  return j;
}

inline Json system_json(const CantorSystem& sys) {
  Json j;
  j["label"] = sys.label();
  j["prefix"] = Json::array();
  for (const auto& st : sys.prefix()) j["prefix"].push_back(stage_json(st));
  j["tail"]["kind"] = to_string(sys.tail().kind);
  j["tail"]["stages"] = Json::array();
  for (const auto& st : sys.tail().stages) j["tail"]["stages"].push_back(stage_json(st));
  if (const auto& d = sys.declared_dimension()) j["declared_dimension"] = {{"value", d->value.canonical_str()}, {"source", d->source}};
  return j;
}

inline Json validation_json(const ValidationResult& v) {
  Json j;
  j["ok"] = v.ok();
  j["violations"] = Json::array();
  for (const auto& x : v.violations) j["violations"].push_back({{"stage", x.stage}, {"rule", x.rule}, {"detail", x.detail}});
  return j;
}

inline Json log_expr_json(const LogExpr& e, mpfr_prec_t prec) {
  Json j;
  j["expr"] = e.label();
  j["exact"] = e.canonical_str();
  j["rational"] = e.is_rational();
  j["enclosure"] = to_json(CertInterval::from(e.enclose(prec)));
  return j;
}

inline Json dimension_json(const DimensionResult& d, mpfr_prec_t prec) {
  Json j;
  j["s"] = log_expr_json(d.s, prec);
  j["t"] = log_expr_json(d.t, prec);
  j["exact"] = d.exact;
  j["source"] = d.source;
  j["partial_ratios"] = Json::array();
  for (const auto& p : d.partial)
    j["partial_ratios"].push_back({{"k", p.k}, {"mu", p.mu.get_str()}, {"inv_b", p.inv_b.str()}, {"ratio", to_json(p.value)}});
  return j;
}

inline Json measure_result_json(const MeasureResult& m) {
  Json j;
  j["classification"] = to_string(m.classification);
  if (const auto e = m.exact()) j["L"] = e->str();
  else j["L"] = to_json(m.L);
  j["approximate"] = m.approximate;
  j["attained_at"] = m.attained_at;
  j["terms"] = Json::array();
  for (const auto& t : m.terms) j["terms"].push_back({{"k", t.k}, {"value", to_json(t.value)}});
  return j;
}

inline Json witness_json(const Witness& w) {
  Json j;
  j["index"] = {w.kp, w.k, w.i, w.j};
  j["rule"] = w.rule;
  j["lhs"] = to_json(w.lhs_value);
  j["rhs"] = to_json(w.rhs_value);
  j["verdict"] = to_string(w.verdict);
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

inline Json assumption_json(const AssumptionReport& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["outcome"] = to_string(r.outcome);
  j["depth"] = r.depth;
  j["checks"] = r.checks;
  j["witnesses"] = Json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back(witness_json(w));
  j["equalities"] = Json::array();
  for (const auto& w : r.equalities) j["equalities"].push_back(witness_json(w));
  j["notes"] = r.notes;
  return j;
}

/// {s, L, hausdorff, certificate} plus the term table.
inline Json measure_json(const DimensionResult& dim, const HausdorffResult& h, const std::optional<MeasureResult>& m,
                         const std::string& refusal) {
  Json j;
  j["s"] = dim.s.label();
  if (m) {
    if (const auto e = m->exact()) j["L"] = e->str();
    else j["L"] = to_json(m->L);
  } else {
    j["L"] = nullptr;
    j["refused"] = refusal;
  }
  j["hausdorff_outcome"] = to_string(h.outcome);
  if (h.value) {
    if (const auto e = h.value->exact()) j["hausdorff"] = e->str();
    else j["hausdorff"] = to_json(h.value->L);
  } else {
    j["hausdorff"] = nullptr;
  }
  j["certificate"] = h.certificate;
  if (!h.note.empty()) j["note"] = h.note;
  if (m) j["detail"] = measure_result_json(*m);
  return j;
}

inline Json lemma_json(const LemmaReport& r) {
  Json j;
  j["k"] = r.k;
  j["pairs"] = r.pairs;
  j["verdict"] = to_string(r.verdict);
  j["violation_count"] = r.violation_count;
  j["certified"] = r.certified;
  j["equalities"] = r.equalities;
  j["indeterminate"] = r.indeterminate;
  j["violations"] = Json::array();
  for (const auto& v : r.violations)
    j["violations"].push_back({{"lower", to_json(v.lower)},
                               {"upper", to_json(v.upper)},
                               {"count", v.count},
                               {"lhs", to_json(v.lhs)},
                               {"rhs", v.rhs.str()},
                               {"verdict", to_string(v.verdict)}});
  return j;
}

inline Json cover_json(const CoverSolution& c) {
  Json j;
  j["k"] = c.k;
  if (c.delta) j["delta"] = c.delta->str();
  j["blocks"] = Json::array();
  for (const auto& b : c.blocks) j["blocks"].push_back({b.first, b.last});
  j["cost"] = to_json(c.cost);
  j["optimum_lower"] = c.optimum_lower.str();
  j["basic_cost"] = to_json(c.basic_cost);
  j["beats_basic"] = c.beats_basic();
  j["ties"] = c.ties;
  return j;
}

inline Json table_json(const std::vector<TableRow>& rows) {
  Json j = Json::array();
  for (const auto& r : rows)
    j.push_back({{"k", r.k}, {"basic", to_json(r.basic)}, {"dp", to_json(r.dp)}, {"dp_lower", r.dp_lower.str()},
                 {"blocks", r.blocks}});
  return j;
}

/// Report document: schema tag, system echo, then the fragments in order.
inline Json emit_report(const CantorSystem& sys, const std::vector<std::pair<std::string, Json>>& fragments) {
  Json j;
  j["schema"] = kReportSchema;
  j["system"] = system_json(sys);
  for (const auto& [name, frag] : fragments) j[name] = frag;
  return j;
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// One row per stage 0..k_max, every basic interval drawn to scale. Coordinates
/// are exact rationals rounded to four decimals, so output is reproducible.
inline std::string render_svg(const CantorSystem& sys, std::size_t k_max, std::size_t budget = kDefaultRenderBudget) {
  checked_count(sys, k_max, budget);
  const Rational width(1000);
  const Rational margin(20);
  const long row_h = 12;
  const long row_gap = 18;
  const long height = 2 * 20 + static_cast<long>(k_max + 1) * (row_h + row_gap) - row_gap;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1040\" height=\"" << height << "\" viewBox=\"0 0 1040 "
      << height << "\">\n";
  out << "<title>" << detail::xml_escape(sys.label().empty() ? "cantor system" : sys.label()) << ", stages 0.." << k_max << "</title>\n";
  out << "<rect width=\"1040\" height=\"" << height << "\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k <= k_max; ++k) {
    const long yk = 20 + static_cast<long>(k) * (row_h + row_gap);
    out << "<g id=\"stage-" << k << "\" fill=\"black\">\n";
    for (const auto& bi : basic_intervals(sys, k, budget)) {
      out << "<rect x=\"" << to_decimal(margin + bi.left * width, 4) << "\" y=\"" << yk << "\" width=\""
          << to_decimal(bi.length * width, 4) << "\" height=\"" << row_h << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace cantorkit
