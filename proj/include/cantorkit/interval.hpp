#pragma once

// Outward-rounded interval arithmetic on MPFR numbers.

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "cantorkit/rational.hpp"

namespace cantorkit {

/// Owning MPFR value.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  [[nodiscard]] mpfr_srcptr get() const { return v_; }
  [[nodiscard]] mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  /// Exact value as a rational (binary floats are dyadic rationals).
  [[nodiscard]] Rational to_rational() const {
    if (mpfr_zero_p(v_)) return Rational(0);
    BigInt m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    BigInt p;
    if (e >= 0) {
      mpz_mul_2exp(p.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
      return Rational(p);
    }
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    return Rational(m, p);
  }
  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

/// Closed interval [lo, hi] with MPFR endpoints; every operation rounds outward.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128) : lo_(prec), hi_(prec) {}

  static Interval point(const Rational& r, mpfr_prec_t prec) {
    Interval out(prec);
    mpfr_set_q(out.lo_.get(), r.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi_.get(), r.raw().get_mpq_t(), MPFR_RNDU);
    return out;
  }
  static Interval hull(const Rational& a, const Rational& b, mpfr_prec_t prec) {
    Interval out(prec);
    mpfr_set_q(out.lo_.get(), std::min(a, b).raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi_.get(), std::max(a, b).raw().get_mpq_t(), MPFR_RNDU);
    return out;
  }

  [[nodiscard]] mpfr_prec_t prec() const { return lo_.prec(); }
  [[nodiscard]] const BigFloat& lo() const { return lo_; }
  [[nodiscard]] const BigFloat& hi() const { return hi_; }
  BigFloat& lo() { return lo_; }
  BigFloat& hi() { return hi_; }

  [[nodiscard]] bool positive() const { return mpfr_sgn(lo_.get()) > 0; }
  [[nodiscard]] bool negative() const { return mpfr_sgn(hi_.get()) < 0; }
  [[nodiscard]] bool contains_zero() const { return !positive() && !negative(); }
  [[nodiscard]] bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

  /// hi - lo rounded up.
  [[nodiscard]] BigFloat width() const {
    BigFloat w(prec());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
  }
  [[nodiscard]] bool contains(const Rational& r) const {
    return mpfr_cmp_q(lo_.get(), r.raw().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), r.raw().get_mpq_t()) >= 0;
  }
  [[nodiscard]] bool overlaps(const Interval& o) const {
    return mpfr_lessequal_p(lo_.get(), o.hi_.get()) && mpfr_lessequal_p(o.lo_.get(), hi_.get());
  }
  [[nodiscard]] double mid_double() const { return 0.5 * (lo_.to_double() + hi_.to_double()); }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval out(std::max(a.prec(), b.prec()));
    mpfr_add(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return out;
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval out(std::max(a.prec(), b.prec()));
    mpfr_sub(out.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(out.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return out;
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = std::max(a.prec(), b.prec());
    Interval out(p);
    BigFloat t(p);
    bool first = true;
    for (const BigFloat* x : {&a.lo_, &a.hi_}) {
      for (const BigFloat* y : {&b.lo_, &b.hi_}) {
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), out.lo_.get())) mpfr_set(out.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), out.hi_.get())) mpfr_set(out.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
    return out;
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DomainError("interval division by an interval containing zero");
    Interval inv(b.prec());
    mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
    mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
    return a * inv;
  }

  /// Natural logarithm of a positive interval. Narrow intervals use one correctly
  /// rounded evaluation plus the bound log(b) - log(a) <= (b - a) / a.
  [[nodiscard]] Interval log() const {
    if (!positive()) throw DomainError("logarithm of a non-positive interval");
    const mpfr_prec_t p = prec();
    Interval out(p);
    if (is_point()) {
      mpfr_log(out.lo_.get(), lo_.get(), MPFR_RNDD);
      mpfr_log(out.hi_.get(), lo_.get(), MPFR_RNDU);
      return out;
    }
    BigFloat rel(p);
    mpfr_sub(rel.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    mpfr_div(rel.get(), rel.get(), lo_.get(), MPFR_RNDU);
    if (mpfr_cmp_d(rel.get(), 1e-6) < 0) {
      BigFloat y(p);
      mpfr_log(y.get(), lo_.get(), MPFR_RNDN);
      mpfr_set(out.lo_.get(), y.get(), MPFR_RNDD);
      mpfr_nextbelow(out.lo_.get());
      mpfr_set(out.hi_.get(), y.get(), MPFR_RNDU);
      mpfr_nextabove(out.hi_.get());
      mpfr_add(out.hi_.get(), out.hi_.get(), rel.get(), MPFR_RNDU);
      return out;
    }
    mpfr_log(out.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_log(out.hi_.get(), hi_.get(), MPFR_RNDU);
    return out;
  }

  /// Exponential. Narrow intervals use one correctly rounded evaluation plus
  /// exp(b) <= exp(a) * (1 + 2 (b - a)) for b - a <= 1.
  [[nodiscard]] Interval exp() const {
    const mpfr_prec_t p = prec();
    Interval out(p);
    BigFloat w = width();
    if (!is_point() && mpfr_cmp_d(w.get(), 1e-6) < 0) {
      BigFloat z(p);
      mpfr_exp(z.get(), lo_.get(), MPFR_RNDN);
      // |z - exp(lo)| <= 2^-p * exp(lo), so exp(lo) lies in z * [1 - 2^(1-p), 1 + 2^(1-p)].
      BigFloat eps(p);
      mpfr_set_ui_2exp(eps.get(), 1, static_cast<mpfr_exp_t>(1 - p), MPFR_RNDU);
      BigFloat f(p);
      mpfr_ui_sub(f.get(), 1, eps.get(), MPFR_RNDD);
      mpfr_mul(out.lo_.get(), z.get(), f.get(), MPFR_RNDD);
      mpfr_add_ui(f.get(), eps.get(), 1, MPFR_RNDU);
      mpfr_mul(out.hi_.get(), z.get(), f.get(), MPFR_RNDU);
      mpfr_mul_2ui(w.get(), w.get(), 1, MPFR_RNDU);
      mpfr_add_ui(w.get(), w.get(), 1, MPFR_RNDU);
      mpfr_mul(out.hi_.get(), out.hi_.get(), w.get(), MPFR_RNDU);
      return out;
    }
    mpfr_exp(out.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_exp(out.hi_.get(), hi_.get(), MPFR_RNDU);
    return out;
  }

  [[nodiscard]] std::string debug_str() const {
    return "[" + std::to_string(lo_.to_double()) + ", " + std::to_string(hi_.to_double()) + "]";
  }

 private:
  BigFloat lo_;
  BigFloat hi_;
};

/// Smallest of two intervals in the sense of the pointwise minimum function.
inline Interval min(const Interval& a, const Interval& b) {
  Interval out(std::max(a.prec(), b.prec()));
  mpfr_min(out.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_min(out.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return out;
}

}  // namespace cantorkit
