#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantorkit/log_expr.hpp"
#include "cantorkit/rational.hpp"

namespace cantorkit {

/// Sorted digit offsets of one stage. Either an explicit list or an arithmetic
/// progression first, first+step, ..., which keeps stages with millions of
/// evenly spaced digits cheap.
class DigitSet {
 public:
  DigitSet() = default;

  static DigitSet list(std::vector<Rational> digits) {
    DigitSet d;
    d.list_ = std::move(digits);
    d.count_ = d.list_.size();
    return d;
  }
  static DigitSet progression(const Rational& first, const Rational& step, std::size_t count) {
    DigitSet d;
    d.progression_ = true;
    d.first_ = first;
    d.step_ = step;
    d.count_ = count;
    return d;
  }

  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] bool is_progression() const { return progression_; }
  [[nodiscard]] const Rational& first() const { return progression_ ? first_ : list_.front(); }
  [[nodiscard]] const Rational& step() const { return step_; }
  [[nodiscard]] const std::vector<Rational>& explicit_digits() const { return list_; }

  [[nodiscard]] Rational operator[](std::size_t j) const {
    if (j >= count_) throw DomainError("digit index out of range");
    return progression_ ? first_ + step_ * Rational(static_cast<long>(j)) : list_[j];
  }
  [[nodiscard]] Rational back() const { return (*this)[count_ - 1]; }

  [[nodiscard]] std::vector<Rational> materialize() const {
    if (!progression_) return list_;
    std::vector<Rational> out;
    out.reserve(count_);
    Rational d = first_;
    for (std::size_t j = 0; j < count_; ++j, d += step_) out.push_back(d);
    return out;
  }

  friend bool operator==(const DigitSet& a, const DigitSet& b) {
    if (a.count_ != b.count_) return false;
    if (a.progression_ && b.progression_) return a.count_ == 0 || (a.first_ == b.first_ && a.step_ == b.step_);
    for (std::size_t j = 0; j < a.count_; ++j)
      if (a[j] != b[j]) return false;
    return true;
  }

 private:
  bool progression_ = false;
  std::vector<Rational> list_;
  Rational first_{0};
  Rational step_{0};
  std::size_t count_ = 0;
};

/// One refinement level: ratio beta and digit set D.
class Stage {
 public:
  Stage() = default;
  Stage(Rational beta, DigitSet digits) : beta_(std::move(beta)), digits_(std::move(digits)) {}
  Stage(Rational beta, std::vector<Rational> digits) : Stage(std::move(beta), DigitSet::list(std::move(digits))) {}

  [[nodiscard]] const Rational& beta() const { return beta_; }
  [[nodiscard]] const DigitSet& digits() const { return digits_; }
  [[nodiscard]] std::size_t m() const { return digits_.size(); }
  [[nodiscard]] Rational digit(std::size_t j) const { return digits_[j]; }
  /// Largest admissible digit, (1 - beta) / beta.
  [[nodiscard]] Rational digit_bound() const { return (Rational(1) - beta_) / beta_; }

  friend bool operator==(const Stage& a, const Stage& b) { return a.beta_ == b.beta_ && a.digits_ == b.digits_; }

 private:
  Rational beta_{0};
  DigitSet digits_;
};

enum class TailKind { kFinite, kConstant, kPeriodic };

inline const char* to_string(TailKind k) {
  switch (k) {
    case TailKind::kFinite: return "finite";
    case TailKind::kConstant: return "constant";
    case TailKind::kPeriodic: return "periodic";
  }
  return "?";
}

inline std::optional<TailKind> parse_tail_kind(const std::string& s) {
  if (s == "finite") return TailKind::kFinite;
  if (s == "constant") return TailKind::kConstant;
  if (s == "periodic") return TailKind::kPeriodic;
  return std::nullopt;
}

struct TailRule {
  TailKind kind = TailKind::kFinite;
  std::vector<Stage> stages;  // one stage for constant, the cycle for periodic

  static TailRule finite() { return {}; }
  static TailRule constant(Stage s) { return {TailKind::kConstant, {std::move(s)}}; }
  static TailRule periodic(std::vector<Stage> cycle) { return {TailKind::kPeriodic, std::move(cycle)}; }

  friend bool operator==(const TailRule& a, const TailRule& b) { return a.kind == b.kind && a.stages == b.stages; }
};

/// Dimension value attached to a truncated family, e.g. the limit of its ratios.
struct DeclaredDimension {
  LogExpr value;
  std::string source;

  friend bool operator==(const DeclaredDimension& a, const DeclaredDimension& b) {
    return a.value == b.value && a.source == b.source;
  }
};

class CantorSystem {
 public:
  CantorSystem() = default;
  CantorSystem(std::vector<Stage> prefix, TailRule tail, std::string label = "")
      : prefix_(std::move(prefix)), tail_(std::move(tail)), label_(std::move(label)) {}

  [[nodiscard]] const std::vector<Stage>& prefix() const { return prefix_; }
  [[nodiscard]] const TailRule& tail() const { return tail_; }
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] const std::optional<DeclaredDimension>& declared_dimension() const { return declared_; }

  void set_label(std::string label) { label_ = std::move(label); }
  void set_declared_dimension(DeclaredDimension d) { declared_ = std::move(d); }

  [[nodiscard]] bool is_finite() const { return tail_.kind == TailKind::kFinite; }
  /// Number of stages for finite systems.
  [[nodiscard]] std::size_t max_stage() const {
    if (!is_finite()) throw DomainError("system has infinitely many stages");
    return prefix_.size();
  }
  /// Tail cycle length; zero for finite systems.
  [[nodiscard]] std::size_t period() const { return is_finite() ? 0 : tail_.stages.size(); }
  [[nodiscard]] bool reachable(std::size_t k) const { return !is_finite() || k <= prefix_.size(); }

  /// Stages the system can reach that differ from each other: the prefix and one period.
  [[nodiscard]] std::size_t distinct_stages() const { return prefix_.size() + period(); }

  [[nodiscard]] const Stage& stage_at(std::size_t k) const {
    if (k == 0) throw DomainError("stages are numbered from 1");
    if (k <= prefix_.size()) return prefix_[k - 1];
    if (is_finite())
      throw DomainError("stage " + std::to_string(k) + " beyond finite system of " + std::to_string(prefix_.size()) +
                        " stages");
    if (tail_.stages.empty()) throw DomainError("tail has no stages");
    return tail_.stages[(k - prefix_.size() - 1) % tail_.stages.size()];
  }

  friend bool operator==(const CantorSystem& a, const CantorSystem& b) {
    return a.prefix_ == b.prefix_ && a.tail_ == b.tail_ && a.label_ == b.label_ && a.declared_ == b.declared_;
  }

 private:
  std::vector<Stage> prefix_;
  TailRule tail_;
  std::string label_;
  std::optional<DeclaredDimension> declared_;
};

struct Violation {
  std::size_t stage;  // 1-based; 0 for the system as a whole
  std::string rule;
  std::string detail;
};

struct ValidationResult {
  std::vector<Violation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

namespace detail {

inline void validate_stage(const Stage& st, std::size_t k, std::vector<Violation>& out) {
  const Rational& beta = st.beta();
  if (beta.sign() <= 0) out.push_back({k, "beta must be > 0", "beta = " + beta.short_str()});
  if (beta >= Rational(1, 2)) out.push_back({k, "beta must be < 1/2", "beta = " + beta.short_str()});
  if (st.m() < 2) out.push_back({k, "at least two digits", "m = " + std::to_string(st.m())});
  if (st.m() == 0) return;
  if (st.digits().first().sign() < 0)
    out.push_back({k, "digits must be >= 0", "first digit = " + st.digits().first().short_str()});
  if (beta.sign() > 0 && st.digits().back() > st.digit_bound())
    out.push_back({k, "digits must be <= (1-beta)/beta",
                   "last digit = " + st.digits().back().short_str() + " > " + st.digit_bound().short_str()});
  if (st.digits().is_progression()) {
    if (st.m() >= 2 && st.digits().step() <= Rational(1))
      out.push_back({k, "digit separation ≤ 1", "step = " + st.digits().step().short_str()});
    return;
  }
  const auto& d = st.digits().explicit_digits();
  for (std::size_t j = 1; j < d.size(); ++j) {
    if (d[j] - d[j - 1] <= Rational(1)) {
      out.push_back({k, "digit separation ≤ 1",
                     "d[" + std::to_string(j) + "] - d[" + std::to_string(j - 1) + "] = " + (d[j] - d[j - 1]).short_str()});
      break;
    }
  }
}

}  // namespace detail

/// Checks every stage of the prefix and one tail period.
inline ValidationResult validate_system(const CantorSystem& sys) {
  ValidationResult r;
  if (sys.tail().kind == TailKind::kConstant && sys.tail().stages.size() != 1)
    r.violations.push_back({0, "constant tail needs exactly one stage", ""});
  if (sys.tail().kind == TailKind::kPeriodic && sys.tail().stages.empty())
    r.violations.push_back({0, "periodic tail needs at least one stage", ""});
  if (sys.tail().kind == TailKind::kFinite && !sys.tail().stages.empty())
    r.violations.push_back({0, "finite tail takes no stages", ""});
  if (sys.is_finite() && sys.prefix().empty()) r.violations.push_back({0, "finite system needs a stage", ""});
  if (!r.ok()) return r;
  for (std::size_t k = 1; k <= sys.distinct_stages(); ++k) detail::validate_stage(sys.stage_at(k), k, r.violations);
  return r;
}

struct Scale {
  Rational b{1};
  BigInt mu{1};
};

/// b(k) and mu(k) for k = 0..kmax.
inline std::vector<Scale> scales(const CantorSystem& sys, std::size_t kmax) {
  std::vector<Scale> out(kmax + 1);
  for (std::size_t k = 1; k <= kmax; ++k) {
    const Stage& st = sys.stage_at(k);
    out[k].b = out[k - 1].b * st.beta();
    out[k].mu = out[k - 1].mu * static_cast<unsigned long>(st.m());
  }
  return out;
}

inline Scale scale(const CantorSystem& sys, std::size_t k) { return scales(sys, k).back(); }

struct GapProfile {
  std::vector<Rational> g;  // g_0 .. g_m
};

inline GapProfile gaps(const Stage& st) {
  const std::size_t m = st.m();
  GapProfile p;
  p.g.reserve(m + 1);
  p.g.push_back(st.beta() * st.digit(0));
  for (std::size_t j = 1; j < m; ++j) p.g.push_back(st.beta() * (st.digit(j) - st.digit(j - 1) - Rational(1)));
  p.g.push_back(Rational(1) - st.beta() * (st.digits().back() + Rational(1)));
  return p;
}

inline GapProfile gaps(const CantorSystem& sys, std::size_t k) { return gaps(sys.stage_at(k)); }

/// Smallest d[i + alpha] - d[i] together with the first index attaining it.
inline std::pair<Rational, std::size_t> min_digit_gap_at(const Stage& st, std::size_t alpha) {
  if (alpha < 1 || alpha >= st.m()) throw DomainError("alpha must lie in 1..m-1");
  if (st.digits().is_progression()) return {st.digits().step() * Rational(static_cast<long>(alpha)), 0};
  const auto& d = st.digits().explicit_digits();
  std::size_t best = 0;
  Rational g = d[alpha] - d[0];
  for (std::size_t i = 1; i + alpha < d.size(); ++i) {
    Rational c = d[i + alpha] - d[i];
    if (c < g) {
      g = std::move(c);
      best = i;
    }
  }
  return {g, best};
}

inline Rational min_digit_gap(const Stage& st, std::size_t alpha) { return min_digit_gap_at(st, alpha).first; }

}  // namespace cantorkit
