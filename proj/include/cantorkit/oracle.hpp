#pragma once

// Brute-force checks at small stages: the pairwise simple-interval inequality
// i^t <= |P|/|I| and the cheapest cover by consecutive blocks of basic intervals.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cantorkit/analysis.hpp"
#include "cantorkit/geometry.hpp"

namespace cantorkit {

inline constexpr std::size_t kDefaultOracleBudget = 2000;

namespace detail {

inline double lower_double(const Interval& iv) { return mpfr_get_d(iv.lo().get(), MPFR_RNDD); }
inline double upper_double(const Interval& iv) { return mpfr_get_d(iv.hi().get(), MPFR_RNDU); }

inline std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.to_double());
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pairwise inequality

struct LemmaViolation {
  Word lower;
  Word upper;
  std::uint64_t count = 0;   // i_P
  CertInterval lhs;          // i_P^t
  Rational rhs;              // |P| / |I|
  Verdict verdict = Verdict::kGreater;
};

enum class LemmaVerdict { kPass, kFail, kIndeterminate };

inline const char* to_string(LemmaVerdict v) {
  switch (v) {
    case LemmaVerdict::kPass: return "pass";
    case LemmaVerdict::kFail: return "fail";
    case LemmaVerdict::kIndeterminate: return "indeterminate";
  }
  return "?";
}

struct LemmaOptions {
  std::size_t budget = kDefaultOracleBudget;
  double margin = 1e-9;            // relative prefilter margin
  double audit_fraction = 0.0;     // share of prefilter passes re-decided by cmp_cert
  std::uint64_t audit_seed = 1;
  std::size_t max_listed = 64;
  mpfr_prec_t max_precision = kMaxPrecision;
};

struct LemmaReport {
  std::size_t k = 0;
  std::uint64_t pairs = 0;
  LemmaVerdict verdict = LemmaVerdict::kPass;
  std::uint64_t violation_count = 0;
  std::vector<LemmaViolation> violations;  // first max_listed, in pair order
  std::uint64_t certified = 0;             // pairs sent to cmp_cert
  std::uint64_t equalities = 0;
  std::uint64_t indeterminate = 0;
  std::uint64_t audited = 0;
  std::uint64_t audit_failures = 0;
};

/// Checks i_P^t <= |P|/|I| for every pair of order-k basic intervals a < b.
inline LemmaReport verify_cover_lemma(const CantorSystem& sys, std::size_t k, const DimensionResult& dim,
                                      const LemmaOptions& opt = {}) {
  LemmaReport r;
  r.k = k;
  const std::vector<Rational> y = scaled_lefts(sys, k, opt.budget);
  const std::vector<double> yd = detail::to_doubles(y);
  const double t = dim.t.approx();
  std::mt19937_64 audit_rng(opt.audit_seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  auto certify = [&](std::size_t a, std::size_t b) {
    const auto count = static_cast<long>(b - a + 1);
    const Rational ratio = y[b] - y[a] + Rational(1);
    return std::make_pair(compare(pow(Rational(count), dim.t), PowerExpr(ratio), opt.max_precision), ratio);
  };

  for (std::size_t a = 0; a < y.size(); ++a) {
    for (std::size_t b = a + 1; b < y.size(); ++b) {
      ++r.pairs;
      const double lhs = std::exp(t * std::log(static_cast<double>(b - a + 1)));
      const double rhs = yd[b] - yd[a] + 1.0;
      if (lhs * (1 + opt.margin) < rhs * (1 - opt.margin)) {
        if (opt.audit_fraction > 0 && coin(audit_rng) < opt.audit_fraction) {
          ++r.audited;
          if (certify(a, b).first.verdict != Verdict::kLess) ++r.audit_failures;
        }
        continue;
      }
      ++r.certified;
      const auto [cmp, ratio] = certify(a, b);
      if (cmp.verdict == Verdict::kEqual) ++r.equalities;
      if (cmp.verdict == Verdict::kIndeterminate) ++r.indeterminate;
      if (cmp.verdict != Verdict::kGreater && cmp.verdict != Verdict::kIndeterminate) continue;
      if (cmp.verdict == Verdict::kGreater) ++r.violation_count;
      if (r.violations.size() < opt.max_listed) {
        r.violations.push_back({word_at(sys, k, a), word_at(sys, k, b), b - a + 1,
                                enclose_cert(pow(Rational(static_cast<long>(b - a + 1)), dim.t)), ratio, cmp.verdict});
      }
    }
  }
  if (r.violation_count > 0) r.verdict = LemmaVerdict::kFail;
  else if (r.indeterminate > 0) r.verdict = LemmaVerdict::kIndeterminate;
  return r;
}

inline LemmaReport verify_cover_lemma(const CantorSystem& sys, std::size_t k, const LemmaOptions& opt = {}) {
  return verify_cover_lemma(sys, k, dimension(sys), opt);
}

// ---------------------------------------------------------------------------
// Cover minimization

struct Block {
  std::size_t first = 0;
  std::size_t last = 0;
  friend bool operator==(const Block&, const Block&) = default;
};

struct CoverSolution {
  std::size_t k = 0;
  std::vector<Block> blocks;
  CertInterval cost;          // sum over blocks of |hull|^s
  Rational optimum_lower;     // certified lower bound on the best consecutive cover
  CertInterval basic_cost;    // mu(k) b(k)^s
  std::size_t ties = 0;       // near-equal candidates settled by the tie rule
  std::optional<Rational> delta;

  [[nodiscard]] bool basic_is_optimal(const Rational& tol) const { return basic_cost.hi - optimum_lower <= tol; }
  [[nodiscard]] bool beats_basic() const { return cost.hi < basic_cost.lo; }
};

struct CoverOptions {
  std::size_t budget = kDefaultOracleBudget;
  std::optional<Rational> delta;      // blocks with hull length >= delta are excluded
  double tie_tolerance = 1e-12;       // relative; candidates closer than this are tied
  mpfr_prec_t precision = kDefaultPrecision;
};

namespace detail {

/// sum over blocks of (span * b)^s, grouped by span so exact cases stay exact.
inline CertInterval cover_cost(const std::vector<Rational>& y, const std::vector<Block>& blocks, const Rational& b,
                               const LogExpr& s, mpfr_prec_t prec) {
  std::map<Rational, long> spans;
  for (const auto& blk : blocks) ++spans[y[blk.last] - y[blk.first] + Rational(1)];
  PowerExpr sum;
  for (const auto& [span, n] : spans) sum = sum + PowerExpr(Rational(n)) * pow(span * b, s);
  if (spans.size() <= 16) return enclose_cert(sum, prec);
  return CertInterval::from(sum.enclose(prec));
}

/// Block ends of the best cover of 0..i, front to back.
inline std::vector<std::size_t> path_ends(const std::vector<std::size_t>& start, std::ptrdiff_t i) {
  std::vector<std::size_t> ends;
  while (i >= 0) {
    ends.push_back(static_cast<std::size_t>(i));
    i = static_cast<std::ptrdiff_t>(start[static_cast<std::size_t>(i)]) - 1;
  }
  std::reverse(ends.begin(), ends.end());
  return ends;
}

}  // namespace detail

/// Cheapest partition of the order-k basic intervals into consecutive blocks,
/// each block costing |hull|^s. Ties go to fewer blocks, then to the
/// lexicographically smallest block list.
inline CoverSolution min_cover_dp(const CantorSystem& sys, std::size_t k, const DimensionResult& dim,
                                  const CoverOptions& opt = {}) {
  const std::vector<Rational> y = scaled_lefts(sys, k, opt.budget);
  const std::vector<double> yd = detail::to_doubles(y);
  const std::size_t n = y.size();
  const Scale sc = scale(sys, k);

  std::optional<Rational> span_limit;  // delta / b(k)
  if (opt.delta) {
    if (*opt.delta <= sc.b)
      throw DomainError("delta " + opt.delta->short_str() + " excludes every block; it must exceed b(k) = " +
                        sc.b.short_str());
    span_limit = *opt.delta / sc.b;
  }
  const double limit_d = span_limit ? span_limit->to_double() : std::numeric_limits<double>::infinity();

  // Exponent rounded down: spans are >= 1, so a smaller exponent gives a smaller power.
  const double s_lo = detail::lower_double(dim.s.enclose(kDefaultPrecision));
  const double s_hi = detail::upper_double(dim.s.enclose(kDefaultPrecision));
  if (s_hi > 1.0 + 1e-15) throw DomainError("cover costs need s <= 1");
  const double ymax = n ? std::max(std::fabs(yd.front()), std::fabs(yd.back())) : 0.0;
  constexpr double u = 0x1p-53;
  // Spans lose at most 2 ymax u when the lefts are rounded, and only a rounding
  // of the difference when every left is a double exactly.
  bool lefts_exact = true;
  for (std::size_t i = 0; i < n && lefts_exact; ++i) lefts_exact = Rational(mpq_class(yd[i])) == y[i];
  // pow error (glibc, < 1 ulp) plus span rounding; see the accumulation bound below.
  const double widen = 0x1p-40 + (lefts_exact ? 8.0 : 8.0 * ymax + 8.0) * u;

  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<double> best_lo(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> start(n, 0);
  std::vector<std::size_t> nblocks(n, 0);
  std::size_t ties = 0;

  auto too_long = [&](std::size_t j, std::size_t i, double span) {
    if (!span_limit) return false;
    if (span < limit_d * (1 - 1e-9)) return false;
    if (span > limit_d * (1 + 1e-9)) return true;
    return y[i] - y[j] + Rational(1) >= *span_limit;
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t jj = i + 1; jj-- > 0;) {
      const std::size_t j = jj;
      const double span = yd[i] - yd[j] + 1.0;
      if (too_long(j, i, span)) break;  // spans only grow as j decreases
      const double term = std::pow(span, s_lo);
      const double prev = j ? best[j - 1] : 0.0;
      const double prev_lo = j ? best_lo[j - 1] : 0.0;
      if (!std::isfinite(prev)) continue;
      best_lo[i] = std::min(best_lo[i], prev_lo + term * (1 - widen));
      const double cand = prev + term;
      const std::size_t cand_blocks = (j ? nblocks[j - 1] : 0) + 1;
      const double tol = opt.tie_tolerance * std::max(cand, best[i]);
      bool take = false;
      if (!std::isfinite(best[i]) || cand < best[i] - tol) {
        take = true;
      } else if (cand <= best[i] + tol) {
        ++ties;
        if (cand_blocks != nblocks[i]) {
          take = cand_blocks < nblocks[i];
        } else {
          auto a = detail::path_ends(start, static_cast<std::ptrdiff_t>(j) - 1);
          a.push_back(i);
          const auto b = detail::path_ends(start, static_cast<std::ptrdiff_t>(i));
          take = a < b;
        }
      }
      if (take) {
        best[i] = cand;
        start[i] = j;
        nblocks[i] = cand_blocks;
      }
    }
    if (!std::isfinite(best[i])) throw DomainError("no admissible block ends at basic interval " + std::to_string(i));
  }

  CoverSolution sol;
  sol.k = k;
  sol.delta = opt.delta;
  sol.ties = ties;
  const auto ends = detail::path_ends(start, static_cast<std::ptrdiff_t>(n) - 1);
  std::size_t first = 0;
  for (std::size_t e : ends) {
    sol.blocks.push_back({first, e});
    first = e + 1;
  }
  sol.basic_cost = enclose_cert(measure_term(sc, dim.s), opt.precision);
  sol.cost = detail::cover_cost(y, sol.blocks, sc.b, dim.s, opt.precision);
  if (!span_limit && sol.cost.lo > sol.basic_cost.hi) {
    // All singletons is always admissible without delta; never report worse.
    sol.blocks.clear();
    for (std::size_t i = 0; i < n; ++i) sol.blocks.push_back({i, i});
    sol.cost = sol.basic_cost;
  }

  // Each rounded sum along a path of at most n additions loses at most a
  // factor (1 + u)^n, so best_lo / (1 + u)^n bounds the exact minimum of the
  // lowered terms, which bounds the true minimum.
  const double shrink = 1.0 - 2.0 * static_cast<double>(n + 1) * u;
  const Rational lower(mpq_class(std::max(0.0, best_lo[n - 1] * shrink)));
  const Interval bs = pow(sc.b, dim.s).enclose(opt.precision);
  sol.optimum_lower = std::min(lower * CertInterval::from(bs).lo, sol.cost.lo);
  return sol;
}

inline CoverSolution min_cover_dp(const CantorSystem& sys, std::size_t k, const CoverOptions& opt = {}) {
  return min_cover_dp(sys, k, dimension(sys), opt);
}

// ---------------------------------------------------------------------------
// Stage table

struct TableRow {
  std::size_t k = 0;
  CertInterval basic;
  CertInterval dp;
  Rational dp_lower;
  std::size_t blocks = 0;
};

inline std::vector<TableRow> measure_table(const CantorSystem& sys, std::size_t k_lo, std::size_t k_hi,
                                           const DimensionResult& dim, const CoverOptions& opt = {}) {
  if (k_lo > k_hi) throw DomainError("table range is empty");
  checked_count(sys, k_hi, opt.budget);
  std::vector<TableRow> rows;
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    const CoverSolution c = min_cover_dp(sys, k, dim, opt);
    rows.push_back({k, c.basic_cost, c.cost, c.optimum_lower, c.blocks.size()});
  }
  return rows;
}

inline std::vector<TableRow> measure_table(const CantorSystem& sys, std::size_t k_lo, std::size_t k_hi,
                                           const CoverOptions& opt = {}) {
  return measure_table(sys, k_lo, k_hi, dimension(sys), opt);
}

}  // namespace cantorkit
