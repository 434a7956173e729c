#include <gtest/gtest.h>

#include <random>

#include "cantorkit/certified.hpp"

namespace {

using cantorkit::CertInterval;
using cantorkit::LogExpr;
using cantorkit::PowerExpr;
using cantorkit::Rational;
using cantorkit::Verdict;
using cantorkit::cmp_cert;
using cantorkit::compare;
using cantorkit::log_ratio;
using cantorkit::pow;
using cantorkit::pow_cert;

Rational R(const char* s) { return Rational::parse(s); }

// log(2)/log(3) to 40 digits, computed independently with mpmath.
const Rational kLog2OverLog3 = R("0.6309297535714574370995271143427608542996");

TEST(Rational, ParsesFractionsIntegersAndDecimalsExactly) {
  EXPECT_EQ(R("1/3"), Rational(1, 3));
  EXPECT_EQ(R("-6/4"), Rational(-3, 2));
  EXPECT_EQ(R("0.5"), Rational(1, 2));
  EXPECT_EQ(R("0.1"), Rational(1, 10));
  EXPECT_EQ(R("-1.25e-3"), Rational(-1, 800));
  EXPECT_EQ(R("2E3"), Rational(2000));
  EXPECT_EQ(R(" 7 "), Rational(7));
  EXPECT_THROW(R("1/0"), std::invalid_argument);
  EXPECT_THROW(R("abc"), std::invalid_argument);
  EXPECT_THROW(R(""), std::invalid_argument);
  EXPECT_THROW(R("1.2.3"), std::invalid_argument);
}

TEST(Rational, CanonicalFormAndFormatting) {
  EXPECT_EQ(Rational(4, -6).str(), "-2/3");
  EXPECT_EQ(Rational(3).str(), "3/1");
  EXPECT_EQ(Rational(3).short_str(), "3");
  EXPECT_EQ(cantorkit::to_decimal(Rational(2, 3), 4), "0.6667");
  EXPECT_EQ(cantorkit::to_decimal(Rational(-1, 8), 2), "-0.13");
  EXPECT_EQ(cantorkit::to_decimal(Rational(5), 0), "5");
  EXPECT_EQ(cantorkit::pow(Rational(2, 3), -2), Rational(9, 4));
}

TEST(LogRatio, ExactIdentities) {
  const LogExpr one = log_ratio(3, 3);
  ASSERT_TRUE(one.is_rational());
  EXPECT_EQ(one.rational_value(), Rational(1));

  const LogExpr two = log_ratio(9, 3);
  ASSERT_TRUE(two.is_rational());
  EXPECT_EQ(two.rational_value(), Rational(2));

  const LogExpr half = log_ratio(3, 9);
  ASSERT_TRUE(half.is_rational());
  EXPECT_EQ(half.rational_value(), Rational(1, 2));
  EXPECT_EQ(half.describe(), "log(3)/log(9) = 1/2");

  const LogExpr neg = log_ratio(Rational(1, 8), 4);
  ASSERT_TRUE(neg.is_rational());
  EXPECT_EQ(neg.rational_value(), Rational(-3, 2));

  EXPECT_TRUE(log_ratio(1, 7).is_rational());
  EXPECT_EQ(log_ratio(1, 7).rational_value(), Rational(0));
}

TEST(LogRatio, IrrationalEnclosure) {
  const LogExpr s = log_ratio(2, 3);
  ASSERT_FALSE(s.is_rational());
  EXPECT_EQ(s.label(), "log(2)/log(3)");
  const auto enc = CertInterval::from(s.enclose(128));
  // The reference is rounded to 40 digits, so compare within that rounding.
  const Rational tolerance = cantorkit::pow(Rational(10), -39);
  EXPECT_LE(enc.lo, kLog2OverLog3 + tolerance);
  EXPECT_GE(enc.hi, kLog2OverLog3 - tolerance);
  EXPECT_LT(enc.width(), cantorkit::pow(Rational(10), -30));
  // log(4)/log(9) is the same number in canonical form.
  EXPECT_TRUE(log_ratio(4, 9) == s);
  EXPECT_TRUE(log_ratio(2, 3).reciprocal() == log_ratio(3, 2));
  EXPECT_EQ(log_ratio(2, 3).reciprocal().label(), "log(3)/log(2)");
}

TEST(LogRatio, DomainErrors) {
  EXPECT_THROW(log_ratio(0, 3), cantorkit::DomainError);
  EXPECT_THROW(log_ratio(-1, 3), cantorkit::DomainError);
  EXPECT_THROW(log_ratio(2, 1), cantorkit::DomainError);
  EXPECT_THROW(log_ratio(2, Rational(1, 2)), cantorkit::DomainError);
}

TEST(PowCert, OneThirdToTheDimensionIsOneHalf) {
  const CertInterval e = pow_cert(Rational(1, 3), log_ratio(2, 3), 64);
  EXPECT_TRUE(e.contains(Rational(1, 2)));
  EXPECT_LE(e.width(), cantorkit::pow(Rational(2), -50));
}

TEST(PowCert, TrivialExponentAndBase) {
  const CertInterval a = pow_cert(Rational(1, 3), LogExpr(1), 64);
  EXPECT_EQ(a.lo, Rational(1, 3));
  EXPECT_EQ(a.hi, Rational(1, 3));
  const CertInterval b = pow_cert(Rational(1), log_ratio(2, 3), 64);
  EXPECT_EQ(b.lo, Rational(1));
  EXPECT_EQ(b.hi, Rational(1));
  const CertInterval c = pow_cert(Rational(4, 9), LogExpr(Rational(1, 2)), 64);
  EXPECT_EQ(c.lo, Rational(2, 3));
  EXPECT_TRUE(c.is_exact());
  EXPECT_THROW(pow_cert(Rational(0), LogExpr(1)), cantorkit::DomainError);
}

TEST(PowCert, WidthBoundAndContainment) {
  // x^(p/q) with x = y^q has the known value y^p; check containment for
  // irrational-looking evaluation paths too: (2^(log3/log2))^k = 3^k.
  const LogExpr t = log_ratio(3, 2);
  for (long k = 1; k <= 5; ++k) {
    for (long prec : {32L, 64L, 128L, 256L}) {
      const CertInterval e = pow_cert(cantorkit::pow(Rational(2), k), t, prec);
      EXPECT_TRUE(e.contains(cantorkit::pow(Rational(3), k))) << k << " " << prec;
    }
  }
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> small(2, 50);
  for (int trial = 0; trial < 40; ++trial) {
    const Rational x(small(rng), small(rng));
    if (x == Rational(1)) continue;
    const LogExpr e = log_ratio(small(rng), small(rng) + 1);
    for (long prec = 32; prec <= 512; prec *= 2) {
      const CertInterval enc = pow_cert(x, e, prec);
      const Rational magnitude = abs(enc.hi);
      EXPECT_LE(enc.width(), cantorkit::pow(Rational(2), 14 - prec) * magnitude);
    }
  }
}

TEST(PowCert, WidthHalvesPerExtraBit) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> small(2, 40);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Rational x(small(rng), small(rng));
    const LogExpr e = log_ratio(small(rng), small(rng) + 1);
    const CertInterval a = pow_cert(x, e, 80);
    if (a.is_exact()) continue;
    const CertInterval b = pow_cert(x, e, 81);
    EXPECT_LE(b.width() * Rational(2), a.width()) << x << " ^ " << e.label();
    // Refinement never widens and stays nested.
    EXPECT_LE(a.lo, b.lo);
    EXPECT_GE(a.hi, b.hi);
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST(CmpCert, RewriteRuleGivesExactEquality) {
  const auto c = compare(pow(2, log_ratio(3, 2)), PowerExpr(3));
  EXPECT_EQ(c.verdict, Verdict::kEqual);
  EXPECT_TRUE(c.exact);
  EXPECT_EQ(cmp_cert(pow(4, log_ratio(3, 2)), PowerExpr(9)), Verdict::kEqual);
  EXPECT_EQ(cmp_cert(pow(Rational(1, 3), log_ratio(2, 3)), PowerExpr(Rational(1, 2))), Verdict::kEqual);
}

TEST(CmpCert, SquareRootComparison) {
  EXPECT_EQ(cmp_cert(pow(Rational(1, 3), Rational(1, 2)), PowerExpr(Rational(1, 2))), Verdict::kGreater);
  EXPECT_EQ(cmp_cert(PowerExpr(Rational(1, 2)), pow(Rational(1, 3), Rational(1, 2))), Verdict::kLess);
  EXPECT_EQ(cmp_cert(pow(Rational(1, 4), Rational(1, 2)), PowerExpr(Rational(1, 2))), Verdict::kEqual);
}

TEST(CmpCert, SumsOfMonomialsWithExactCancellation) {
  const LogExpr t = log_ratio(3, 2);
  // (2^t - 1) * (1/3) * 2^t = (3 - 1) * 1 = 2
  const PowerExpr lhs = (pow(2, t) - PowerExpr(1)) * PowerExpr(Rational(1, 3)) * pow(2, t);
  const auto c = compare(lhs, PowerExpr(2));
  EXPECT_EQ(c.verdict, Verdict::kEqual);
  EXPECT_TRUE(c.exact);
  // 10^t = 2^t 5^t even though 5 is not a power of 2.
  EXPECT_EQ(cmp_cert(pow(10, t), pow(2, t) * pow(5, t)), Verdict::kEqual);
  // sqrt(2) + sqrt(8) = 3 sqrt(2)
  EXPECT_EQ(cmp_cert(pow(2, Rational(1, 2)) + pow(8, Rational(1, 2)), PowerExpr(3) * pow(2, Rational(1, 2))),
            Verdict::kEqual);
}

TEST(CmpCert, IntervalPathSeparatesButNeverClaimsEquality) {
  const LogExpr t = log_ratio(3, 2);
  const auto c = compare(pow(3, t), PowerExpr(5));  // 3^1.585 = 5.70...
  EXPECT_EQ(c.verdict, Verdict::kGreater);
  // Three incommensurable radicals: interval path.
  const PowerExpr three = pow(2, Rational(1, 2)) + pow(3, Rational(1, 2)) + pow(5, Rational(1, 2));
  const auto d = compare(three, PowerExpr(Rational(53, 10)));  // 5.3823 > 5.3
  EXPECT_EQ(d.verdict, Verdict::kGreater);
  EXPECT_FALSE(d.exact);
  const auto e = compare(three, three + PowerExpr(0));
  EXPECT_EQ(e.verdict, Verdict::kEqual);  // identical terms merge symbolically
}

TEST(CmpCert, IndeterminateWhenPrecisionExhausted) {
  // Mixed log ratios leave the single-ratio class, so equal sums can only
  // be compared by intervals, which never separate them.
  const PowerExpr a = pow(2, log_ratio(3, 5)) + pow(3, log_ratio(2, 7));
  const PowerExpr b = pow(3, log_ratio(2, 7)) + pow(2, log_ratio(3, 5));
  EXPECT_EQ(cmp_cert(a, b, 256), Verdict::kIndeterminate);
}

TEST(CmpCert, Antisymmetry) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> small(2, 30);
  for (int trial = 0; trial < 200; ++trial) {
    const PowerExpr a = pow(Rational(small(rng), small(rng)), log_ratio(small(rng), small(rng) + 1));
    const PowerExpr b = PowerExpr(Rational(small(rng), small(rng))) * pow(small(rng), Rational(1, small(rng)));
    const Verdict ab = cmp_cert(a, b);
    const Verdict ba = cmp_cert(b, a);
    EXPECT_EQ(ab, cantorkit::flip(ba));
  }
}

TEST(CmpCert, EqualityOnlyFromExactPath) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> small(2, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const long base = small(rng);
    const long k = small(rng) % 4 + 1;
    const LogExpr t = log_ratio(small(rng), base);
    const PowerExpr lhs = pow(cantorkit::pow(Rational(base), k), t);
    const PowerExpr rhs = pow(Rational(base), t) * pow(cantorkit::pow(Rational(base), k - 1), t);
    const auto c = compare(lhs, rhs);
    EXPECT_EQ(c.verdict, Verdict::kEqual);
    EXPECT_TRUE(c.exact);
  }
}

}  // namespace
