#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cantorkit {

/// Thrown when an operation is called outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using BigInt = mpz_class;

/// Exact rational number in canonical form (coprime, positive denominator).
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& v) : q_(v) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p/q", an integer, or a decimal literal such as "-1.25e-3".
  /// The conversion is exact; no binary floating point is involved.
  static Rational parse(std::string_view text);

  [[nodiscard]] BigInt num() const { return q_.get_num(); }
  [[nodiscard]] BigInt den() const { return q_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return q_; }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] double to_double() const { return q_.get_d(); }

  /// Always "p/q", including "n/1" for integers.
  [[nodiscard]] std::string str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }
  /// "p/q", or just "n" for integers.
  [[nodiscard]] std::string short_str() const {
    return is_integer() ? q_.get_num().get_str() : str();
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.short_str(); }

 private:
  mpq_class q_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational reciprocal(const Rational& r) {
  if (r.is_zero()) throw DomainError("reciprocal of zero");
  return Rational(r.den(), r.num());
}

/// r^e for integer e (negative allowed when r != 0).
inline Rational pow(const Rational& r, long e) {
  if (e < 0) return pow(reciprocal(r), -e);
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

inline BigInt floor(const Rational& r) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  return out;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Exact n-th root of a nonnegative rational if it exists.
inline bool exact_root(const Rational& r, unsigned long n, Rational& out) {
  if (r.sign() < 0) return false;
  BigInt a, b;
  if (mpz_root(a.get_mpz_t(), r.num().get_mpz_t(), n) == 0) return false;
  if (mpz_root(b.get_mpz_t(), r.den().get_mpz_t(), n) == 0) return false;
  out = Rational(a, b);
  return true;
}

/// Decimal rendering rounded to `digits` fractional digits (round half away from zero).
/// Exact integer arithmetic; used for display and for deterministic SVG coordinates.
inline std::string to_decimal(const Rational& r, int digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  BigInt scaled_num = abs(r.num()) * scale * 2 + r.den();
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), BigInt(r.den() * 2).get_mpz_t());
  std::string s = q.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  const bool is_zero = q == 0;
  return (r.sign() < 0 && !is_zero) ? "-" + s : s;
}

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&](const char* why) {
    throw std::invalid_argument(std::string("invalid rational literal '") + std::string(text) + "': " + why);
  };
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  if (t.empty()) fail("empty");

  auto parse_int = [&](std::string_view s) -> BigInt {
    std::string_view body = s;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) body.remove_prefix(1);
    if (body.empty()) fail("missing digits");
    for (char c : body)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("unexpected character");
    std::string str(s);
    if (str.front() == '+') str.erase(0, 1);
    return BigInt(str, 10);
  };

  if (const auto slash = t.find('/'); slash != std::string_view::npos) {
    const BigInt n = parse_int(t.substr(0, slash));
    const BigInt d = parse_int(t.substr(slash + 1));
    if (d == 0) fail("zero denominator");
    return Rational(n, d);
  }

  // Decimal: [sign] digits [. digits] [e|E [sign] digits]
  bool negative = false;
  if (t.front() == '+' || t.front() == '-') {
    negative = t.front() == '-';
    t.remove_prefix(1);
  }
  std::string mantissa;
  long frac_digits = 0;
  long exponent = 0;
  std::size_t i = 0;
  bool seen_point = false;
  for (; i < t.size(); ++i) {
    const char c = t[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa.push_back(c);
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (mantissa.empty()) fail("missing digits");
  if (i < t.size()) {
    if (t[i] != 'e' && t[i] != 'E') fail("unexpected character");
    const BigInt e = parse_int(t.substr(i + 1));
    if (!e.fits_slong_p()) fail("exponent out of range");
    exponent = e.get_si();
  }
  BigInt n(mantissa, 10);
  if (negative) n = -n;
  const long shift = exponent - frac_digits;
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  return shift >= 0 ? Rational(BigInt(n * p)) : Rational(n, p);
}

}  // namespace cantorkit

template <>
struct std::hash<cantorkit::Rational> {
  std::size_t operator()(const cantorkit::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
