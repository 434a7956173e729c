#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include "cantorkit/interval.hpp"
#include "cantorkit/rational.hpp"

namespace cantorkit {

namespace detail {

/// Largest e >= 1 with n = root^e for a positive integer n.
inline std::pair<BigInt, unsigned long> integer_primitive_root(const BigInt& n) {
  if (n <= 1) return {n, 1};
  BigInt root = n;
  unsigned long exponent = 1;
  // Repeatedly peel off prime-order roots; the product of peeled orders is the answer.
  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t bits = mpz_sizeinbase(root.get_mpz_t(), 2);
    for (unsigned long k = 2; k <= bits; ++k) {
      bool prime = true;
      for (unsigned long d = 2; d * d <= k; ++d)
        if (k % d == 0) { prime = false; break; }
      if (!prime) continue;
      BigInt r;
      if (mpz_root(r.get_mpz_t(), root.get_mpz_t(), k) != 0) {
        root = r;
        exponent *= k;
        changed = true;
        break;
      }
    }
  }
  return {root, exponent};
}

}  // namespace detail

/// Writes r = root^e with the largest possible e. For r > 0, r != 1.
inline std::pair<Rational, unsigned long> primitive_root(const Rational& r) {
  if (r.sign() <= 0 || r == Rational(1)) throw DomainError("primitive_root needs a positive rational other than 1");
  const auto [nr, ne] = detail::integer_primitive_root(r.num());
  const auto [dr, de] = detail::integer_primitive_root(r.den());
  // r = nr^ne / dr^de; the common exponent is gcd(ne, de) (with 1 treated as any power).
  unsigned long g;
  if (r.num() == 1) g = de;
  else if (r.den() == 1) g = ne;
  else g = std::gcd(ne, de);
  BigInt n = r.num();
  BigInt d = r.den();
  BigInt rn, rd;
  mpz_root(rn.get_mpz_t(), n.get_mpz_t(), g);
  mpz_root(rd.get_mpz_t(), d.get_mpz_t(), g);
  return {Rational(rn, rd), g};
}

/// Exact value c * log(P)/log(Q) + r with rational c, r.
///
/// Stored canonically: P and Q are greater than one and not perfect powers, so the
/// ratio is rational exactly when P == Q (and then c is folded into r). The label
/// keeps the form the value was constructed from, e.g. "log(3)/log(9)".
class LogExpr {
 public:
  LogExpr() = default;
  LogExpr(const Rational& value) : offset_(value), label_(value.short_str()) {}  // NOLINT
  LogExpr(long value) : LogExpr(Rational(value)) {}                              // NOLINT

  [[nodiscard]] bool is_rational() const { return coeff_.is_zero(); }
  [[nodiscard]] const Rational& rational_value() const {
    if (!is_rational()) throw DomainError("log expression is irrational");
    return offset_;
  }
  [[nodiscard]] const Rational& coeff() const { return coeff_; }
  [[nodiscard]] const Rational& offset() const { return offset_; }
  /// Canonical numerator base of the log ratio (meaningful only when irrational).
  [[nodiscard]] const Rational& log_num() const { return p_; }
  [[nodiscard]] const Rational& log_den() const { return q_; }
  [[nodiscard]] const std::string& label() const { return label_; }

  /// Label plus exact value when it differs, e.g. "log(3)/log(9) = 1/2".
  [[nodiscard]] std::string describe() const {
    if (is_rational() && label_ != offset_.short_str()) return label_ + " = " + offset_.short_str();
    return label_;
  }

  /// Canonical text: either "p/q" or "c*log(P)/log(Q)+r".
  [[nodiscard]] std::string canonical_str() const {
    if (is_rational()) return offset_.str();
    std::string s = coeff_ == Rational(1) ? "" : coeff_.short_str() + "*";
    s += "log(" + p_.short_str() + ")/log(" + q_.short_str() + ")";
    if (!offset_.is_zero()) s += "+" + offset_.short_str();
    return s;
  }

  /// Enclosure of the value at working precision `prec`.
  [[nodiscard]] Interval enclose(mpfr_prec_t prec) const {
    if (is_rational()) return Interval::point(offset_, prec);
    const Interval ratio = Interval::point(p_, prec).log() / Interval::point(q_, prec).log();
    return Interval::point(coeff_, prec) * ratio + Interval::point(offset_, prec);
  }
  [[nodiscard]] double approx() const { return enclose(96).mid_double(); }

  /// a * this + b.
  [[nodiscard]] LogExpr affine(const Rational& a, const Rational& b) const {
    LogExpr out = *this;
    out.coeff_ = coeff_ * a;
    out.offset_ = offset_ * a + b;
    if (out.coeff_.is_zero()) {
      out.p_ = out.q_ = Rational(1);
    }
    out.label_ = is_rational() ? out.offset_.short_str()
                               : "(" + a.short_str() + ")*(" + label_ + ")+(" + b.short_str() + ")";
    return out;
  }

  /// 1 / this, defined for pure ratios c*log(P)/log(Q) and nonzero rationals.
  [[nodiscard]] LogExpr reciprocal() const {
    if (is_rational()) {
      LogExpr out(cantorkit::reciprocal(offset_));
      if (label_.find('/') != std::string::npos && label_.rfind("log(", 0) == 0) out.label_ = swap_label(label_);
      return out;
    }
    if (!offset_.is_zero()) throw DomainError("reciprocal of an affine log expression");
    LogExpr out;
    out.coeff_ = cantorkit::reciprocal(coeff_);
    out.p_ = q_;
    out.q_ = p_;
    out.label_ = swap_label(label_);
    return out;
  }

  friend bool operator==(const LogExpr& a, const LogExpr& b) {
    return a.coeff_ == b.coeff_ && a.offset_ == b.offset_ && a.p_ == b.p_ && a.q_ == b.q_;
  }

  friend LogExpr log_ratio(const Rational& P, const Rational& Q);

 private:
  static std::string swap_label(const std::string& label) {
    // "log(A)/log(B)" -> "log(B)/log(A)"
    const auto mid = label.find(")/log(");
    if (label.rfind("log(", 0) != 0 || mid == std::string::npos || label.back() != ')') return "1/(" + label + ")";
    const std::string a = label.substr(4, mid - 4);
    const std::string b = label.substr(mid + 6, label.size() - mid - 7);
    return "log(" + b + ")/log(" + a + ")";
  }

  Rational coeff_{0};
  Rational offset_{0};
  Rational p_{1};
  Rational q_{1};
  std::string label_{"0"};
};

/// Exact log(P)/log(Q) for P > 0, Q > 1.
inline LogExpr log_ratio(const Rational& P, const Rational& Q) {
  if (P.sign() <= 0) throw DomainError("log_ratio: P must be positive");
  if (Q <= Rational(1)) throw DomainError("log_ratio: Q must exceed 1");
  LogExpr out;
  out.label_ = "log(" + P.short_str() + ")/log(" + Q.short_str() + ")";
  if (P == Rational(1)) return out;
  Rational sign(1);
  Rational base = P;
  if (P < Rational(1)) {
    sign = Rational(-1);
    base = reciprocal(P);
  }
  const auto [pr, pe] = primitive_root(base);
  const auto [qr, qe] = primitive_root(Q);
  const Rational c = sign * Rational(static_cast<long>(pe), static_cast<long>(qe));
  if (pr == qr) {
    out.offset_ = c;
  } else {
    out.coeff_ = c;
    out.p_ = pr;
    out.q_ = qr;
  }
  return out;
}

}  // namespace cantorkit
