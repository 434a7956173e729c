#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cantorkit/certified.hpp"
#include "cantorkit/system.hpp"

namespace cantorkit {

// ---------------------------------------------------------------- dimension

struct PartialRatio {
  std::size_t k;
  BigInt mu;         // argument of the numerator log
  Rational inv_b;    // argument of the denominator log, 1/b(k)
  CertInterval value;
};

struct DimensionResult {
  LogExpr s;
  LogExpr t;
  bool exact = false;
  std::string source;  // "tail_period", "final_stage" or "declared_limit"
  CertInterval enclosure;
  std::vector<PartialRatio> partial;
};

/// Default number of stages examined by the checkers: prefix plus two tail
/// periods, or every stage of a finite system.
inline std::size_t default_depth(const CantorSystem& sys) {
  return sys.is_finite() ? sys.max_stage() : sys.prefix().size() + 2 * sys.period();
}

inline CertInterval partial_ratio_enclosure(const BigInt& mu, const Rational& inv_b, mpfr_prec_t prec) {
  if (mu == 1) return CertInterval::exact(Rational(0));
  const Interval num = Interval::point(Rational(mu), prec).log();
  const Interval den = Interval::point(inv_b, prec).log();
  return CertInterval::from(num / den);
}

inline DimensionResult dimension(const CantorSystem& sys, std::size_t depth = 0,
                                 mpfr_prec_t prec = kDefaultPrecision) {
  if (depth == 0) depth = default_depth(sys);
  if (sys.is_finite()) depth = std::min(depth, sys.max_stage());
  DimensionResult r;
  BigInt mu(1);
  Rational inv_b(1);
  r.partial.reserve(depth);
  for (std::size_t k = 1; k <= depth; ++k) {
    const Stage& st = sys.stage_at(k);
    mu *= static_cast<unsigned long>(st.m());
    inv_b /= st.beta();
    r.partial.push_back({k, mu, inv_b, partial_ratio_enclosure(mu, inv_b, prec)});
  }
  if (!sys.is_finite()) {
    BigInt M(1);
    Rational B(1);
    for (const auto& st : sys.tail().stages) {
      M *= static_cast<unsigned long>(st.m());
      B *= st.beta();
    }
    r.s = log_ratio(Rational(M), reciprocal(B));
    r.exact = true;
    r.source = "tail_period";
  } else if (sys.declared_dimension()) {
    r.s = sys.declared_dimension()->value;
    r.source = sys.declared_dimension()->source;
  } else {
    const Scale last = scale(sys, sys.max_stage());
    r.s = log_ratio(Rational(last.mu), reciprocal(last.b));
    r.source = "final_stage";
  }
  r.t = r.s.reciprocal();
  r.enclosure = CertInterval::from(r.s.enclose(prec));
  return r;
}

// ---------------------------------------------------------------- helpers

namespace detail {

/// x^e, with 0^e = 0 for positive e.
inline PowerExpr pow0(const Rational& x, const LogExpr& e) {
  if (x.is_zero()) return PowerExpr(0);
  return pow(x, e);
}

inline std::string verdict_word(Verdict v) {
  switch (v) {
    case Verdict::kLess: return "<";
    case Verdict::kEqual: return "=";
    case Verdict::kGreater: return ">";
    case Verdict::kIndeterminate: return "?";
  }
  return "?";
}

}  // namespace detail

/// Sign-aware comparison of a term m * beta^s against one.
inline Verdict zero_beta_verdict(const Stage& st, const LogExpr& s, mpfr_prec_t max_prec = kMaxPrecision) {
  return cmp_cert(PowerExpr(Rational(static_cast<long>(st.m()))) * pow(st.beta(), s), PowerExpr(1), max_prec);
}

// ---------------------------------------------------------------- measure

enum class MeasureClass { kZero, kPositiveExact, kPositiveEnclosed, kTruncatedConstant, kZeroTrending, kTruncated };

inline const char* to_string(MeasureClass c) {
  switch (c) {
    case MeasureClass::kZero: return "zero";
    case MeasureClass::kPositiveExact: return "positive-exact";
    case MeasureClass::kPositiveEnclosed: return "positive-enclosed";
    case MeasureClass::kTruncatedConstant: return "truncated-constant";
    case MeasureClass::kZeroTrending: return "zero-trending";
    case MeasureClass::kTruncated: return "truncated";
  }
  return "?";
}

struct MeasureTerm {
  std::size_t k;
  CertInterval value;
};

struct MeasureResult {
  MeasureClass classification = MeasureClass::kZero;
  CertInterval L;
  bool approximate = false;
  std::size_t attained_at = 0;  // k whose term equals L
  std::vector<MeasureTerm> terms;

  [[nodiscard]] std::optional<Rational> exact() const {
    if (L.is_exact()) return L.lo;
    return std::nullopt;
  }
};

/// The term mu(k) b(k)^s as a power expression.
inline PowerExpr measure_term(const Scale& sc, const LogExpr& s) {
  return PowerExpr(Rational(sc.mu)) * pow(sc.b, s);
}

/// L = liminf mu(k) b(k)^s. Needs m_k beta_k^s <= 1 on every stage, which
/// makes the terms nonincreasing.
inline MeasureResult measure_L(const CantorSystem& sys, const DimensionResult& dim, std::size_t depth = 0,
                               mpfr_prec_t prec = kDefaultPrecision) {
  const std::size_t stages = sys.is_finite() ? sys.max_stage() : sys.distinct_stages();
  for (std::size_t k = 1; k <= stages; ++k) {
    const Verdict v = zero_beta_verdict(sys.stage_at(k), dim.s);
    if (v == Verdict::kGreater)
      throw DomainError("measure needs m_k beta_k^s <= 1, which fails at stage " + std::to_string(k));
    if (v == Verdict::kIndeterminate)
      throw DomainError("could not decide m_k beta_k^s <= 1 at stage " + std::to_string(k));
  }
  if (depth == 0) depth = default_depth(sys);
  if (sys.is_finite()) depth = sys.max_stage();
  depth = std::max(depth, sys.prefix().size());

  MeasureResult r;
  const auto table = scales(sys, depth);
  r.terms.reserve(depth + 1);
  for (std::size_t k = 0; k <= depth; ++k) r.terms.push_back({k, enclose_cert(measure_term(table[k], dim.s), prec)});

  if (!sys.is_finite()) {
    // Over one period the factors multiply to exactly one and none exceeds one,
    // so every factor is one and the terms are constant after the prefix.
    r.attained_at = sys.prefix().size();
    r.L = r.terms[r.attained_at].value;
    r.classification = r.L.is_exact() ? MeasureClass::kPositiveExact : MeasureClass::kPositiveEnclosed;
    if (r.L.is_exact() && r.L.lo.is_zero()) r.classification = MeasureClass::kZero;
    return r;
  }
  r.approximate = true;
  r.attained_at = depth;
  r.L = r.terms[depth].value;
  const PowerExpr last = measure_term(table[depth], dim.s);
  const PowerExpr mid = measure_term(table[depth / 2], dim.s);
  const Verdict v = cmp_cert(last, mid);
  if (v == Verdict::kEqual) r.classification = MeasureClass::kTruncatedConstant;
  else if (v == Verdict::kLess) r.classification = MeasureClass::kZeroTrending;
  else r.classification = MeasureClass::kTruncated;
  return r;
}

// ---------------------------------------------------------------- assumptions

enum class AssumptionKind { kA1, kA2a, kA2b, kA1Alt, kA2aAlt, kThmMain, kCorSmallS, kCorM2, kQrs };

inline const std::vector<AssumptionKind>& all_assumption_kinds() {
  static const std::vector<AssumptionKind> kinds = {
      AssumptionKind::kA1,     AssumptionKind::kA2a,      AssumptionKind::kA2b,
      AssumptionKind::kA1Alt,  AssumptionKind::kA2aAlt,   AssumptionKind::kThmMain,
      AssumptionKind::kCorSmallS, AssumptionKind::kCorM2, AssumptionKind::kQrs};
  return kinds;
}

inline const char* to_string(AssumptionKind k) {
  switch (k) {
    case AssumptionKind::kA1: return "A1";
    case AssumptionKind::kA2a: return "A2a";
    case AssumptionKind::kA2b: return "A2b";
    case AssumptionKind::kA1Alt: return "A1_ALT";
    case AssumptionKind::kA2aAlt: return "A2A_ALT";
    case AssumptionKind::kThmMain: return "THM_MAIN";
    case AssumptionKind::kCorSmallS: return "COR_SMALL_S";
    case AssumptionKind::kCorM2: return "COR_M2";
    case AssumptionKind::kQrs: return "QRS";
  }
  return "?";
}

inline std::optional<AssumptionKind> parse_assumption_kind(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::toupper(c); });
  for (auto k : all_assumption_kinds()) {
    std::string n = to_string(k);
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::toupper(c); });
    if (n == name) return k;
  }
  return std::nullopt;
}

enum class Outcome { kHolds, kFails, kIndeterminate };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kHolds: return "holds";
    case Outcome::kFails: return "fails";
    case Outcome::kIndeterminate: return "indeterminate";
  }
  return "?";
}

/// One decided inequality lhs <= rhs at indices (k', k, i, j).
struct Witness {
  std::size_t kp = 0;
  std::size_t k = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  std::string rule;
  PowerExpr lhs;
  PowerExpr rhs;
  CertInterval lhs_value;
  CertInterval rhs_value;
  Verdict verdict = Verdict::kIndeterminate;
  std::string note;

  [[nodiscard]] std::tuple<std::size_t, std::size_t, std::size_t, std::size_t> key() const { return {kp, k, i, j}; }
};

struct AssumptionReport {
  AssumptionKind kind = AssumptionKind::kA1;
  Outcome outcome = Outcome::kHolds;
  std::size_t depth = 0;
  std::size_t checks = 0;
  std::vector<Witness> witnesses;   // violated inequalities, and undecided ones
  std::vector<Witness> equalities;  // boundary cases certified equal
  std::vector<std::string> notes;

  [[nodiscard]] bool holds() const { return outcome == Outcome::kHolds; }
};

struct CheckOptions {
  std::size_t depth = 0;
  mpfr_prec_t precision = kDefaultPrecision;
  mpfr_prec_t max_precision = kMaxPrecision;
  std::size_t max_equalities = 32;
};

namespace detail {

class Checker {
 public:
  Checker(AssumptionReport& report, const CheckOptions& opt) : r_(report), opt_(opt) {}

  /// Records lhs <= rhs; returns false when it is violated or undecided.
  bool le(std::size_t kp, std::size_t k, std::size_t i, std::size_t j, const std::string& rule, const PowerExpr& lhs,
          const PowerExpr& rhs) {
    ++r_.checks;
    const Comparison c = compare(lhs, rhs, opt_.max_precision, opt_.precision);
    if (c.verdict == Verdict::kLess) return true;
    if (c.verdict == Verdict::kEqual && r_.equalities.size() >= opt_.max_equalities) return true;
    Witness w{kp, k, i, j, rule, lhs, rhs, enclose_cert(lhs, opt_.precision), enclose_cert(rhs, opt_.precision),
              c.verdict, ""};
    if (c.verdict == Verdict::kEqual) {
      w.note = "equality decided exactly";
      r_.equalities.push_back(std::move(w));
      return true;
    }
    if (c.verdict == Verdict::kIndeterminate) {
      w.note = "undecided at " + std::to_string(opt_.max_precision) + " bits";
      undecided_ = true;
    } else {
      failed_ = true;
    }
    r_.witnesses.push_back(std::move(w));
    return false;
  }

  void structural(std::size_t kp, std::size_t k, const std::string& rule, const std::string& note) {
    ++r_.checks;
    Witness w;
    w.kp = kp;
    w.k = k;
    w.rule = rule;
    w.verdict = Verdict::kGreater;
    w.note = note;
    r_.witnesses.push_back(std::move(w));
    failed_ = true;
  }

  void finish() {
    std::stable_sort(r_.witnesses.begin(), r_.witnesses.end(),
                     [](const Witness& a, const Witness& b) { return a.key() < b.key(); });
    std::stable_sort(r_.equalities.begin(), r_.equalities.end(),
                     [](const Witness& a, const Witness& b) { return a.key() < b.key(); });
    r_.outcome = failed_ ? Outcome::kFails : (undecided_ ? Outcome::kIndeterminate : Outcome::kHolds);
  }

 private:
  AssumptionReport& r_;
  const CheckOptions& opt_;
  bool failed_ = false;
  bool undecided_ = false;
};

/// Increments alpha to examine on a stage. Every inequality here has a
/// left side convex in alpha (t >= 1) against a right side linear in alpha
/// for evenly spaced digits, so the two ends suffice there.
inline std::vector<std::size_t> alphas_to_check(const Stage& st, const LogExpr& t) {
  std::vector<std::size_t> out;
  const std::size_t m = st.m();
  const bool convex = t.is_rational() ? t.rational_value() >= Rational(1) : t.approx() >= 1.0;
  if (st.digits().is_progression() && convex) {
    out.push_back(1);
    if (m - 1 > 1) out.push_back(m - 1);
    return out;
  }
  for (std::size_t a = 1; a < m; ++a) out.push_back(a);
  return out;
}

inline PowerExpr R(const Rational& r) { return PowerExpr(r); }
inline PowerExpr R(long v) { return PowerExpr(Rational(v)); }
inline PowerExpr R(std::size_t v) { return PowerExpr(Rational(static_cast<long>(v))); }

/// (1-beta) on stage k: (1 + alpha)^t - 1 <= g_k(alpha).
inline void one_beta(Checker& c, const Stage& st, std::size_t k, const LogExpr& t) {
  for (std::size_t a : alphas_to_check(st, t)) {
    const auto [g, i] = min_digit_gap_at(st, a);
    c.le(k, k, i, i + a, "(1+j-i)^t - 1 <= d_j - d_i", pow(Rational(static_cast<long>(1 + a)), t) - R(1L), R(g));
  }
}

inline void zero_beta(Checker& c, const Stage& st, std::size_t k, const LogExpr& s) {
  c.le(k, k, 0, st.m() - 1, "m_k beta_k^s <= 1", R(st.m()) * pow(st.beta(), s), R(1L));
}

}  // namespace detail

/// Decides one hypothesis on stages 1..depth. Non-strict inequalities accept
/// certified equality.
inline AssumptionReport check_assumption(const CantorSystem& sys, const DimensionResult& dim, AssumptionKind kind,
                                         CheckOptions opt = {}) {
  using detail::R;
  AssumptionReport r;
  r.kind = kind;
  std::size_t depth = opt.depth ? opt.depth : default_depth(sys);
  if (sys.is_finite()) depth = std::min(depth, sys.max_stage());
  r.depth = depth;
  if (!dim.exact) r.notes.push_back("dimension is approximate (" + dim.source + ")");
  detail::Checker c(r, opt);
  const LogExpr& s = dim.s;
  const LogExpr& t = dim.t;
  const auto table = scales(sys, depth);

  switch (kind) {
    case AssumptionKind::kA1:
      for (std::size_t kp = 1; kp <= depth; ++kp) {
        const Stage& st = sys.stage_at(kp);
        for (std::size_t k = kp; k <= depth; ++k) {
          const Rational ratio_b = table[k].b / table[kp].b;
          const Rational ratio_mu(BigInt(table[k].mu / table[kp].mu));
          const PowerExpr scale_factor = R(ratio_b) * pow(ratio_mu, t);
          for (std::size_t a : detail::alphas_to_check(st, t)) {
            const auto [g, i] = min_digit_gap_at(st, a);
            c.le(kp, k, i, i + a, "((1+j-i)^t - 1) b(k)/b(k') (mu(k)/mu(k'))^t <= d_j - d_i",
                 (pow(Rational(static_cast<long>(1 + a)), t) - R(1L)) * scale_factor, R(g));
          }
        }
      }
      break;
    case AssumptionKind::kA2a:
      for (std::size_t kp = 1; kp <= depth; ++kp) {
        const Stage& st = sys.stage_at(kp);
        for (std::size_t k = kp + 1; k <= depth; ++k) {
          const Rational ratio_b = table[k].b / table[kp].b;
          const Rational ratio_mu(BigInt(table[k].mu / table[kp].mu));
          const PowerExpr scale_factor = R(ratio_b) * pow(ratio_mu, t);
          for (std::size_t a : detail::alphas_to_check(st, t)) {
            const auto [g, i] = min_digit_gap_at(st, a);
            c.le(kp, k, i, i + a, "1 + (j-i)^t b(k)/b(k') (mu(k)/mu(k'))^t <= d_j - d_i",
                 R(1L) + pow(Rational(static_cast<long>(a)), t) * scale_factor, R(g));
          }
        }
      }
      break;
    case AssumptionKind::kA2b:
      for (std::size_t k = 1; k <= depth; ++k) {
        const Stage& st = sys.stage_at(k);
        for (std::size_t a : detail::alphas_to_check(st, LogExpr(1))) {
          const auto [g, i] = min_digit_gap_at(st, a);
          c.le(k, k, i, i + a, "2(j-i) <= d_j - d_i", R(2 * a), R(g));
        }
      }
      break;
    case AssumptionKind::kA1Alt:
      for (std::size_t k = 1; k <= depth; ++k) {
        detail::zero_beta(c, sys.stage_at(k), k, s);
        detail::one_beta(c, sys.stage_at(k), k, t);
      }
      break;
    case AssumptionKind::kA2aAlt: {
      bool zero_beta_ok = true;
      for (std::size_t k = 1; k <= depth; ++k) {
        const std::size_t before = r.witnesses.size();
        detail::zero_beta(c, sys.stage_at(k), k, s);
        zero_beta_ok = zero_beta_ok && r.witnesses.size() == before;
      }
      if (!zero_beta_ok) r.notes.push_back("the alternative form needs m_k beta_k^s <= 1");
      for (std::size_t k = 1; k <= depth && sys.reachable(k + 1); ++k) {
        const Stage& st = sys.stage_at(k);
        const Stage& next = sys.stage_at(k + 1);
        const PowerExpr factor = R(next.beta()) * pow(Rational(static_cast<long>(next.m())), t);
        for (std::size_t a : detail::alphas_to_check(st, t)) {
          const auto [g, i] = min_digit_gap_at(st, a);
          c.le(k, k + 1, i, i + a, "1 + (j-i)^t beta_{k+1} m_{k+1}^t <= d_j - d_i",
               R(1L) + pow(Rational(static_cast<long>(a)), t) * factor, R(g));
        }
      }
      break;
    }
    case AssumptionKind::kThmMain:
      for (std::size_t k = 1; k <= depth; ++k) {
        const Stage& st = sys.stage_at(k);
        detail::zero_beta(c, st, k, s);
        for (std::size_t a : detail::alphas_to_check(st, t)) {
          const auto [g, i] = min_digit_gap_at(st, a);
          c.le(k, k, i, i + a, "2 <= d_j - d_i", R(2L), R(g));
          c.le(k, k, i, i + a, "(1+j-i)^t - 1 <= d_j - d_i", pow(Rational(static_cast<long>(1 + a)), t) - R(1L), R(g));
        }
      }
      break;
    case AssumptionKind::kCorSmallS:
      for (std::size_t k = 1; k <= depth; ++k) {
        detail::zero_beta(c, sys.stage_at(k), k, s);
        detail::one_beta(c, sys.stage_at(k), k, t);
      }
      // s <= log 2 / log 3 is 3^s <= 2.
      c.le(0, 0, 0, 0, "3^s <= 2", pow(Rational(3), s), R(2L));
      break;
    case AssumptionKind::kCorM2:
      for (std::size_t k = 1; k <= depth; ++k) {
        const Stage& st = sys.stage_at(k);
        if (st.m() != 2 || st.digit(0) != Rational(0) || st.digit(1) != st.digit_bound()) {
          c.structural(k, k, "m_k = 2 and D_k = {0, (1-beta_k)/beta_k}",
                       "stage " + std::to_string(k) + " has m = " + std::to_string(st.m()) +
                           (st.m() == 2 ? ", digits not extreme" : ""));
          continue;
        }
        c.le(k, k, 0, 1, "beta_k^s <= 1/2", pow(st.beta(), s), R(Rational(1, 2)));
      }
      break;
    case AssumptionKind::kQrs: {
      auto spacing = [](const Stage& st) { return st.digit_bound() / Rational(static_cast<long>(st.m() - 1)); };
      for (std::size_t k = 1; k <= depth; ++k) {
        const Stage& st = sys.stage_at(k);
        const Rational d = spacing(st);
        bool homogeneous = true;
        if (st.digits().is_progression()) homogeneous = st.digits().first().is_zero() && st.digits().step() == d;
        else
          for (std::size_t j = 0; j < st.m() && homogeneous; ++j)
            homogeneous = st.digit(j) == d * Rational(static_cast<long>(j));
        if (!homogeneous) {
          c.structural(k, k, "d_{k,j} = j d_k with d_k = (1-beta_k)/(beta_k (m_k-1))",
                       "stage " + std::to_string(k) + " is not homogeneous");
          continue;
        }
        if (st.beta() * Rational(static_cast<long>(st.m())) >= Rational(1))
          c.structural(k, k, "beta_k m_k < 1", "stage " + std::to_string(k) + " has beta_k m_k >= 1");
        if (!sys.reachable(k + 1)) continue;
        const Stage& next = sys.stage_at(k + 1);
        c.le(k, k + 1, 0, 1, "beta_{k+1}(d_{k+1} - 1) <= d_k - 1", R(next.beta() * (spacing(next) - Rational(1))),
             R(d - Rational(1)));
      }
      break;
    }
  }
  c.finish();
  return r;
}

inline AssumptionReport check_assumption(const CantorSystem& sys, AssumptionKind kind, CheckOptions opt = {}) {
  return check_assumption(sys, dimension(sys, opt.depth, opt.precision), kind, opt);
}

// ---------------------------------------------------------------- measure theorem

enum class HausdorffOutcome { kEstablished, kInconclusive, kIndeterminate };

inline const char* to_string(HausdorffOutcome o) {
  switch (o) {
    case HausdorffOutcome::kEstablished: return "established";
    case HausdorffOutcome::kInconclusive: return "inconclusive";
    case HausdorffOutcome::kIndeterminate: return "indeterminate";
  }
  return "?";
}

struct HausdorffResult {
  HausdorffOutcome outcome = HausdorffOutcome::kInconclusive;
  std::vector<std::string> certificate;
  std::optional<MeasureResult> value;
  std::vector<AssumptionReport> reports;  // A1, A2b, A2a as far as evaluated
  std::string note;
};

/// The s-dimensional Hausdorff measure, when A1 together with A2b or A2a
/// certifies that it equals L.
inline HausdorffResult hausdorff_measure(const CantorSystem& sys, const DimensionResult& dim, CheckOptions opt = {}) {
  HausdorffResult h;
  const auto a1 = check_assumption(sys, dim, AssumptionKind::kA1, opt);
  h.reports.push_back(a1);
  auto undecided = [&](const char* name) {
    h.outcome = HausdorffOutcome::kIndeterminate;
    h.note = std::string(name) + " could not be decided; try a higher precision";
  };
  if (a1.outcome == Outcome::kIndeterminate) {
    undecided("A1");
    return h;
  }
  if (a1.outcome == Outcome::kFails) {
    h.note = "A1 fails; use the cover oracle instead";
    return h;
  }
  const auto a2b = check_assumption(sys, dim, AssumptionKind::kA2b, opt);
  h.reports.push_back(a2b);
  std::string second;
  if (a2b.holds()) {
    second = "A2b";
  } else {
    const auto a2a = check_assumption(sys, dim, AssumptionKind::kA2a, opt);
    h.reports.push_back(a2a);
    if (a2a.holds()) second = "A2a";
    else if (a2a.outcome == Outcome::kIndeterminate || a2b.outcome == Outcome::kIndeterminate) {
      undecided("A2a/A2b");
      return h;
    }
  }
  if (second.empty()) {
    h.note = "A1 holds but neither A2a nor A2b does; use the cover oracle instead";
    return h;
  }
  h.certificate = {"A1", second};
  h.value = measure_L(sys, dim, opt.depth, opt.precision);
  h.outcome = HausdorffOutcome::kEstablished;
  if (!dim.exact) h.note = "dimension is approximate (" + dim.source + ")";
  return h;
}

inline HausdorffResult hausdorff_measure(const CantorSystem& sys, CheckOptions opt = {}) {
  return hausdorff_measure(sys, dimension(sys, opt.depth, opt.precision), opt);
}

/// (A + BC)^t <= A^t + ((1 + B)^t - 1) C^t for 0 <= A <= C, 0 <= B, t >= 1.
/// Returns the verdict of the left side against the right side.
inline Verdict magic_holds(const Rational& A, const Rational& B, const Rational& C, const LogExpr& t,
                           mpfr_prec_t max_prec = kMaxPrecision) {
  if (A.sign() < 0 || B.sign() < 0 || C < A) throw DomainError("magic inequality needs 0 <= A <= C and B >= 0");
  if (t.is_rational() ? t.rational_value() < Rational(1) : t.approx() < 1.0)
    throw DomainError("magic inequality needs t >= 1");
  const PowerExpr lhs = detail::pow0(A + B * C, t);
  const PowerExpr rhs = detail::pow0(A, t) + (pow(Rational(1) + B, t) - PowerExpr(1)) * detail::pow0(C, t);
  return cmp_cert(lhs, rhs, max_prec);
}

}  // namespace cantorkit
