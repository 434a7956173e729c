#pragma once

// Certified evaluation and comparison of power expressions
//
//   sum_i c_i * prod_j x_ij ^ e_ij,   x_ij > 0 rational, e_ij a LogExpr.
//
// Comparisons try an exact symbolic path first. All bases are factored over a
// common coprime base, every exponent a + b*log(p)/log(q) is split into a
// rational part and a log part, and powers of q are rewritten with
// q^(r*log(p)/log(q)) = p^r. Like terms are merged; what is left is decided by
// big-integer cross-powering when it reduces to at most two radicals. Anything
// else falls back to outward-rounded interval evaluation with doubling
// precision, which can separate but never certify equality.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cantorkit/interval.hpp"
#include "cantorkit/log_expr.hpp"
#include "cantorkit/rational.hpp"

namespace cantorkit {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;
inline constexpr mpfr_prec_t kMaxPrecision = 4096;

enum class Verdict { kLess, kGreater, kEqual, kIndeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kLess: return "LT";
    case Verdict::kGreater: return "GT";
    case Verdict::kEqual: return "EQ";
    case Verdict::kIndeterminate: return "INDET";
  }
  return "?";
}

inline Verdict flip(Verdict v) {
  if (v == Verdict::kLess) return Verdict::kGreater;
  if (v == Verdict::kGreater) return Verdict::kLess;
  return v;
}

/// Enclosure [lo, hi] of a real value with exact rational endpoints.
struct CertInterval {
  Rational lo;
  Rational hi;
  long bits = 0;  ///< working precision that produced it; 0 for exact values

  static CertInterval exact(const Rational& v) { return {v, v, 0}; }
  static CertInterval from(const Interval& iv) {
    return {iv.lo().to_rational(), iv.hi().to_rational(), static_cast<long>(iv.prec())};
  }

  [[nodiscard]] bool is_exact() const { return lo == hi; }
  [[nodiscard]] Rational width() const { return hi - lo; }
  [[nodiscard]] bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  [[nodiscard]] bool overlaps(const CertInterval& o) const { return lo <= o.hi && o.lo <= hi; }
  [[nodiscard]] double mid() const { return ((lo + hi) / Rational(2)).to_double(); }
  [[nodiscard]] Interval to_interval(mpfr_prec_t prec) const { return Interval::hull(lo, hi, prec); }
};

struct PowerFactor {
  Rational base;
  LogExpr exponent;
};

struct PowerTerm {
  Rational coeff{1};
  std::vector<PowerFactor> factors;
};

/// Finite sum of coefficient * product of powers.
class PowerExpr {
 public:
  PowerExpr() = default;
  PowerExpr(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.push_back({c, {}});
  }
  PowerExpr(long c) : PowerExpr(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  /// x^e for x > 0.
  static PowerExpr power(const Rational& x, const LogExpr& e) {
    if (x.sign() <= 0) throw DomainError("power base must be positive");
    PowerExpr out;
    out.terms_.push_back({Rational(1), {{x, e}}});
    return out;
  }

  [[nodiscard]] const std::vector<PowerTerm>& terms() const { return terms_; }

  friend PowerExpr operator+(PowerExpr a, const PowerExpr& b) {
    a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
    return a;
  }
  friend PowerExpr operator-(const PowerExpr& a) {
    PowerExpr out = a;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
  }
  friend PowerExpr operator-(const PowerExpr& a, const PowerExpr& b) { return a + (-b); }
  friend PowerExpr operator*(const PowerExpr& a, const PowerExpr& b) {
    PowerExpr out;
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        PowerTerm t{x.coeff * y.coeff, x.factors};
        t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
        out.terms_.push_back(std::move(t));
      }
    }
    return out;
  }

  /// Outward-rounded enclosure at working precision `prec`.
  [[nodiscard]] Interval enclose(mpfr_prec_t prec) const {
    Interval sum = Interval::point(Rational(0), prec);
    for (const auto& t : terms_) {
      if (t.factors.empty()) {
        sum = sum + Interval::point(t.coeff, prec);
        continue;
      }
      Interval exponent = Interval::point(Rational(0), prec);
      for (const auto& f : t.factors) {
        if (f.base == Rational(1)) continue;
        exponent = exponent + f.exponent.enclose(prec) * Interval::point(f.base, prec).log();
      }
      sum = sum + Interval::point(t.coeff, prec) * exponent.exp();
    }
    return sum;
  }

 private:
  std::vector<PowerTerm> terms_;
};

inline PowerExpr pow(const Rational& x, const LogExpr& e) { return PowerExpr::power(x, e); }

namespace detail {

/// Pairwise coprime integers > 1 generating every integer fed to it multiplicatively.
class CoprimeBase {
 public:
  void add(const BigInt& n) {
    if (n > 1) pending_.push_back(n);
  }
  void add(const Rational& r) {
    add(BigInt(abs(r.num())));
    add(r.den());
  }

  void build() {
    std::vector<BigInt> items = std::move(pending_);
    pending_.clear();
    items.insert(items.end(), elems_.begin(), elems_.end());
    bool split = true;
    while (split) {
      split = false;
      std::sort(items.begin(), items.end());
      items.erase(std::unique(items.begin(), items.end()), items.end());
      for (std::size_t i = 0; i < items.size() && !split; ++i) {
        for (std::size_t j = i + 1; j < items.size() && !split; ++j) {
          const BigInt g = gcd(items[i], items[j]);
          if (g == 1) continue;
          const BigInt a = items[i] / g;
          const BigInt b = items[j] / g;
          items.erase(items.begin() + static_cast<long>(j));
          items.erase(items.begin() + static_cast<long>(i));
          for (const BigInt* v : {&g, &a, &b})
            if (*v > 1) items.push_back(*v);
          split = true;
        }
      }
    }
    elems_ = std::move(items);
  }

  [[nodiscard]] std::size_t size() const { return elems_.size(); }
  [[nodiscard]] const BigInt& operator[](std::size_t i) const { return elems_[i]; }

  /// Exponent vector of a positive rational over the base.
  [[nodiscard]] std::vector<Rational> factor(const Rational& r) const {
    std::vector<Rational> out(elems_.size(), Rational(0));
    BigInt n = abs(r.num());
    BigInt d = r.den();
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      long e = 0;
      while (mpz_divisible_p(n.get_mpz_t(), elems_[i].get_mpz_t())) {
        n /= elems_[i];
        ++e;
      }
      while (mpz_divisible_p(d.get_mpz_t(), elems_[i].get_mpz_t())) {
        d /= elems_[i];
        --e;
      }
      out[i] = Rational(e);
    }
    if (n != 1 || d != 1) throw std::logic_error("coprime base does not generate the value");
    return out;
  }

 private:
  std::vector<BigInt> pending_;
  std::vector<BigInt> elems_;
};

using ExpVector = std::vector<Rational>;

inline bool is_zero_vector(const ExpVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

inline void axpy(ExpVector& y, const Rational& a, const ExpVector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

/// Exact sign of rho * prod p_i^{w_i} - 1 (rho > 0) by cross-powering, or
/// nullopt when the integers involved would be unreasonably large.
inline std::optional<int> radical_vs_one(const CoprimeBase& base, const ExpVector& w,
                                         const Rational& rho = Rational(1)) {
  if (is_zero_vector(w)) return (rho > Rational(1)) ? 1 : (rho < Rational(1) ? -1 : 0);
  BigInt denom = 1;
  for (const auto& x : w) denom = lcm(denom, x.den());
  if (!denom.fits_ulong_p()) return std::nullopt;
  double bits = static_cast<double>(mpz_sizeinbase(rho.num().get_mpz_t(), 2) + mpz_sizeinbase(rho.den().get_mpz_t(), 2)) *
                denom.get_d();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Rational e = w[i] * Rational(denom);
    bits += std::abs(e.to_double()) * static_cast<double>(mpz_sizeinbase(base[i].get_mpz_t(), 2));
  }
  if (bits > 4.0e6) return std::nullopt;
  BigInt left, right;
  mpz_pow_ui(left.get_mpz_t(), rho.num().get_mpz_t(), denom.get_ui());
  mpz_pow_ui(right.get_mpz_t(), rho.den().get_mpz_t(), denom.get_ui());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Rational e = w[i] * Rational(denom);
    if (e.is_zero()) continue;
    BigInt p;
    const BigInt n = abs(e.num());
    mpz_pow_ui(p.get_mpz_t(), base[i].get_mpz_t(), n.get_ui());
    (e.sign() > 0 ? left : right) *= p;
  }
  return left > right ? 1 : (left < right ? -1 : 0);
}

/// Exact value of prod p_i^{w_i} when it is rational.
inline std::optional<Rational> radical_value(const CoprimeBase& base, const ExpVector& w) {
  BigInt denom = 1;
  for (const auto& x : w) denom = lcm(denom, x.den());
  if (!denom.fits_ulong_p() || denom > 4096) return std::nullopt;
  Rational powered(1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Rational e = w[i] * Rational(denom);
    if (e.is_zero()) continue;
    if (abs(e.num()) * static_cast<long>(mpz_sizeinbase(base[i].get_mpz_t(), 2)) > 4000000) return std::nullopt;
    powered *= pow(Rational(base[i]), e.num().get_si());
  }
  Rational root;
  if (!exact_root(powered, denom.get_ui(), root)) return std::nullopt;
  return root;
}

struct ExactForm {
  CoprimeBase base;
  // (A, Y) -> coefficient; value of a term is coeff * prod p^A * (prod p^Y)^L.
  std::map<std::pair<ExpVector, ExpVector>, Rational> terms;
};

/// Reduces the expression to merged canonical terms; nullopt when the exponents
/// involve more than one log ratio.
inline std::optional<ExactForm> exact_form(const PowerExpr& expr) {
  std::optional<std::pair<Rational, Rational>> ratio;  // (p, q) of the shared log ratio
  ExactForm form;
  for (const auto& t : expr.terms()) {
    for (const auto& f : t.factors) {
      form.base.add(f.base);
      if (!f.exponent.is_rational()) {
        const std::pair<Rational, Rational> pq{f.exponent.log_num(), f.exponent.log_den()};
        if (ratio && *ratio != pq) return std::nullopt;
        ratio = pq;
      }
    }
  }
  if (ratio) {
    form.base.add(ratio->first);
    form.base.add(ratio->second);
  }
  form.base.build();
  const std::size_t n = form.base.size();

  ExpVector vp(n, Rational(0)), vq(n, Rational(0));
  std::size_t pivot = 0;
  if (ratio) {
    vp = form.base.factor(ratio->first);
    vq = form.base.factor(ratio->second);
    while (vq[pivot].is_zero()) ++pivot;
  }

  for (const auto& t : expr.terms()) {
    if (t.coeff.is_zero()) continue;
    ExpVector a(n, Rational(0)), y(n, Rational(0));
    for (const auto& f : t.factors) {
      const ExpVector v = form.base.factor(f.base);
      axpy(a, f.exponent.offset(), v);
      if (!f.exponent.is_rational()) axpy(y, f.exponent.coeff(), v);
    }
    if (ratio && !y[pivot].is_zero()) {
      // q^(r L) = p^r
      const Rational r = y[pivot] / vq[pivot];
      axpy(y, -r, vq);
      axpy(a, r, vp);
    }
    auto& slot = form.terms[{a, y}];
    slot += t.coeff;
  }
  for (auto it = form.terms.begin(); it != form.terms.end();) {
    it = it->second.is_zero() ? form.terms.erase(it) : std::next(it);
  }
  return form;
}

/// Sign of the expression via the exact path, or nullopt if undecidable there.
inline std::optional<int> exact_sign(const PowerExpr& expr) {
  const auto form = exact_form(expr);
  if (!form) return std::nullopt;
  const auto& terms = form->terms;
  if (terms.empty()) return 0;
  if (terms.size() == 1) return terms.begin()->second.sign();
  const bool same_sign = std::all_of(terms.begin(), terms.end(), [&](const auto& kv) {
    return kv.second.sign() == terms.begin()->second.sign();
  });
  if (same_sign) return terms.begin()->second.sign();

  const CoprimeBase& base = form->base;
  // Collapse rational-valued radicals into one constant.
  Rational constant(0);
  std::vector<std::pair<ExpVector, Rational>> radicals;  // irrational, pure radical terms
  bool transcendental = false;
  std::vector<std::pair<std::pair<ExpVector, ExpVector>, Rational>> all(terms.begin(), terms.end());
  for (const auto& [key, c] : all) {
    if (!is_zero_vector(key.second)) {
      transcendental = true;
      continue;
    }
    if (auto v = radical_value(base, key.first)) {
      constant += c * *v;
    } else {
      radicals.emplace_back(key.first, c);
    }
  }

  auto two_term = [&](const ExpVector& a1, const Rational& c1, const ExpVector& a2,
                      const Rational& c2) -> std::optional<int> {
    // sign(c1 R1 + c2 R2) with c1, c2 of opposite signs
    ExpVector w = a1;
    axpy(w, Rational(-1), a2);
    const auto s = radical_vs_one(base, w, abs(c1 / c2));
    if (!s) return std::nullopt;
    return *s * c1.sign();
  };

  if (transcendental) {
    if (all.size() == 2) {
      const auto& [k1, c1] = all[0];
      const auto& [k2, c2] = all[1];
      if (k1.second != k2.second) return std::nullopt;
      return two_term(k1.first, c1, k2.first, c2);
    }
    return std::nullopt;
  }
  if (radicals.empty()) return constant.sign();
  if (radicals.size() == 1) {
    const auto& [a, c] = radicals.front();
    if (constant.is_zero() || constant.sign() == c.sign()) return c.sign();
    return two_term(a, c, ExpVector(base.size(), Rational(0)), constant);
  }
  if (radicals.size() == 2 && constant.is_zero()) {
    const auto& [a1, c1] = radicals[0];
    const auto& [a2, c2] = radicals[1];
    if (c1.sign() == c2.sign()) return c1.sign();
    return two_term(a1, c1, a2, c2);
  }
  return std::nullopt;
}

}  // namespace detail

/// Outcome of a certified comparison together with how it was decided.
struct Comparison {
  Verdict verdict = Verdict::kIndeterminate;
  bool exact = false;         ///< decided symbolically
  long precision = 0;         ///< bits used on the interval path
  CertInterval difference{};  ///< enclosure of lhs - rhs (exact when decided symbolically and rational)
};

/// Certified comparison of lhs against rhs.
inline Comparison compare(const PowerExpr& lhs, const PowerExpr& rhs, mpfr_prec_t max_prec = kMaxPrecision,
                          mpfr_prec_t start_prec = kDefaultPrecision) {
  const PowerExpr diff = lhs - rhs;
  Comparison out;
  if (const auto s = detail::exact_sign(diff)) {
    out.exact = true;
    out.verdict = *s < 0 ? Verdict::kLess : (*s > 0 ? Verdict::kGreater : Verdict::kEqual);
    out.difference = CertInterval::from(diff.enclose(start_prec));
    if (*s == 0) out.difference = CertInterval::exact(Rational(0));
    return out;
  }
  for (mpfr_prec_t p = std::min(start_prec, max_prec); p <= max_prec; p *= 2) {
    const Interval d = diff.enclose(p);
    out.precision = p;
    out.difference = CertInterval::from(d);
    if (d.positive()) {
      out.verdict = Verdict::kGreater;
      return out;
    }
    if (d.negative()) {
      out.verdict = Verdict::kLess;
      return out;
    }
  }
  out.verdict = Verdict::kIndeterminate;
  return out;
}

inline Verdict cmp_cert(const PowerExpr& lhs, const PowerExpr& rhs, mpfr_prec_t max_prec = kMaxPrecision) {
  return compare(lhs, rhs, max_prec).verdict;
}

/// Certified enclosure of x^e. Width is at most about 2^(2-prec) relative; exact
/// (a point) whenever the value is rational.
inline CertInterval pow_cert(const Rational& x, const LogExpr& e, mpfr_prec_t prec = kDefaultPrecision) {
  if (x.sign() <= 0) throw DomainError("pow_cert: base must be positive");
  if (x == Rational(1)) return CertInterval::exact(Rational(1));
  const PowerExpr term = pow(x, e);
  if (const auto form = detail::exact_form(term); form) {
    if (form->terms.size() == 1) {
      const auto& [key, c] = *form->terms.begin();
      if (detail::is_zero_vector(key.second)) {
        if (const auto v = detail::radical_value(form->base, key.first)) return CertInterval::exact(c * *v);
      }
    }
  }
  // Evaluate with generous guard bits, then round outward to `prec` bits.
  const Interval tight = term.enclose(prec + 64);
  Interval rounded(prec);
  mpfr_set(rounded.lo().get(), tight.lo().get(), MPFR_RNDD);
  mpfr_set(rounded.hi().get(), tight.hi().get(), MPFR_RNDU);
  return CertInterval::from(rounded);
}

/// Enclosure of a power expression as exact rational endpoints.
inline CertInterval enclose_cert(const PowerExpr& expr, mpfr_prec_t prec = kDefaultPrecision) {
  if (const auto form = detail::exact_form(expr); form) {
    Rational sum(0);
    bool all_rational = true;
    for (const auto& [key, c] : form->terms) {
      if (!detail::is_zero_vector(key.second)) { all_rational = false; break; }
      const auto v = detail::radical_value(form->base, key.first);
      if (!v) { all_rational = false; break; }
      sum += c * *v;
    }
    if (all_rational) return CertInterval::exact(sum);
  }
  return CertInterval::from(expr.enclose(prec));
}

}  // namespace cantorkit
