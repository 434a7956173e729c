#include <gtest/gtest.h>

#include "cantorkit/presets.hpp"

namespace {

using cantorkit::CantorSystem;
using cantorkit::DigitSet;
using cantorkit::PresetParams;
using cantorkit::Rational;
using cantorkit::Stage;
using cantorkit::TailRule;
using cantorkit::preset;

std::vector<Rational> digits(std::initializer_list<long> ds) {
  std::vector<Rational> out;
  for (long d : ds) out.emplace_back(d);
  return out;
}

bool has_rule(const cantorkit::ValidationResult& v, const std::string& rule) {
  for (const auto& x : v.violations)
    if (x.rule == rule) return true;
  return false;
}

std::vector<CantorSystem> all_presets() {
  return {preset("middle_thirds"),
          preset("example31", {{"n", "9"}, {"d", "4"}}),
          preset("example31", {{"n", "81"}, {"d", "40"}}),
          preset("homogeneous", {{"beta", "1/5"}, {"m", "2"}}),
          preset("homogeneous", {{"beta", "1/7,1/4"}, {"m", "3,2"}}),
          preset("harmonic", {{"K", "12"}}),
          preset("pow_scaling", {{"K", "6"}}),
          preset("example613", {{"beta", "1/5,1/10"}, {"xi", "4/5,1"}}),
          preset("remark614a"),
          preset("remark614b")};
}

TEST(Validate, MiddleThirdsIsValid) { EXPECT_TRUE(cantorkit::validate_system(preset("middle_thirds")).ok()); }

TEST(Validate, BetaOneHalfIsRejected) {
  const CantorSystem sys({}, TailRule::constant(Stage(Rational(1, 2), digits({0}))));
  const auto v = cantorkit::validate_system(sys);
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(has_rule(v, "beta must be < 1/2"));
}

TEST(Validate, DigitSeparationOfOneIsRejected) {
  const CantorSystem sys({}, TailRule::constant(Stage(Rational(1, 5), digits({0, 1}))));
  const auto v = cantorkit::validate_system(sys);
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.violations.front().rule, "digit separation ≤ 1");
  EXPECT_EQ(v.violations.front().stage, 1u);
}

TEST(Validate, ReportsStageIndexInsideTailPeriod) {
  const Stage good(Rational(1, 3), digits({0, 2}));
  const Stage bad(Rational(1, 3), digits({0, 3}));  // 3 > (1 - 1/3)/(1/3) = 2
  const CantorSystem sys({good}, TailRule::periodic({good, bad}));
  const auto v = cantorkit::validate_system(sys);
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_EQ(v.violations[0].stage, 3u);
  EXPECT_EQ(v.violations[0].rule, "digits must be <= (1-beta)/beta");
}

TEST(StageAt, PrefixThenTail) {
  const Stage A(Rational(1, 3), digits({0, 2}));
  const Stage B(Rational(1, 4), digits({0, 3}));
  const CantorSystem constant({A}, TailRule::constant(B));
  EXPECT_EQ(constant.stage_at(1), A);
  EXPECT_EQ(constant.stage_at(7), B);
  const CantorSystem periodic({}, TailRule::periodic({A, B}));
  EXPECT_EQ(periodic.stage_at(4), B);
  EXPECT_EQ(periodic.stage_at(3), A);
  const CantorSystem finite({A, B}, TailRule::finite());
  EXPECT_EQ(finite.stage_at(2), B);
  EXPECT_THROW((void)finite.stage_at(3), cantorkit::DomainError);
  EXPECT_THROW((void)finite.stage_at(0), cantorkit::DomainError);
}

TEST(Scale, ExamplesAndZero) {
  const auto mt = cantorkit::scale(preset("middle_thirds"), 2);
  EXPECT_EQ(mt.b, Rational(1, 9));
  EXPECT_EQ(mt.mu, 4);
  for (const auto& sys : all_presets()) {
    const auto z = cantorkit::scale(sys, 0);
    EXPECT_EQ(z.b, Rational(1));
    EXPECT_EQ(z.mu, 1);
  }
  const auto ps = cantorkit::scale(preset("pow_scaling", {{"q", "2"}, {"alpha", "1/2"}, {"K", "20"}}), 3);
  EXPECT_EQ(ps.b, cantorkit::pow(Rational(2), -12));
  EXPECT_EQ(ps.mu, 64);
  // mu(3) * b(3)^(1/2) = 64 / 2^6 = 1
  EXPECT_EQ(Rational(ps.mu) * Rational(ps.mu), cantorkit::reciprocal(ps.b));
}

TEST(Scale, IsMultiplicative) {
  for (const auto& sys : all_presets()) {
    const std::size_t kmax = sys.is_finite() ? sys.max_stage() : 12;
    const auto table = cantorkit::scales(sys, kmax);
    for (std::size_t k = 1; k <= kmax; ++k) {
      EXPECT_EQ(table[k].b, table[k - 1].b * sys.stage_at(k).beta());
      EXPECT_EQ(table[k].mu, table[k - 1].mu * static_cast<unsigned long>(sys.stage_at(k).m()));
      EXPECT_EQ(cantorkit::scale(sys, k).b, table[k].b);
    }
  }
}

TEST(Gaps, Examples) {
  const auto mt = cantorkit::gaps(preset("middle_thirds"), 1);
  EXPECT_EQ(mt.g, (std::vector<Rational>{0, Rational(1, 3), 0}));
  const auto g = cantorkit::gaps(Stage(Rational(1, 9), digits({0, 4, 8})));
  EXPECT_EQ(g.g, (std::vector<Rational>{0, Rational(1, 3), Rational(1, 3), 0}));
}

TEST(Gaps, SumIdentityOnAllPresets) {
  for (const auto& sys : all_presets()) {
    const std::size_t kmax = sys.is_finite() ? sys.max_stage() : sys.distinct_stages() + 2;
    for (std::size_t k = 1; k <= kmax; ++k) {
      const Stage& st = sys.stage_at(k);
      const auto p = cantorkit::gaps(st);
      ASSERT_EQ(p.g.size(), st.m() + 1);
      Rational total = st.beta() * Rational(static_cast<long>(st.m()));
      for (std::size_t j = 0; j < p.g.size(); ++j) {
        total += p.g[j];
        if (j == 0 || j == st.m()) EXPECT_GE(p.g[j], Rational(0)) << sys.label() << " k=" << k;
        else EXPECT_GT(p.g[j], Rational(0)) << sys.label() << " k=" << k;
      }
      EXPECT_EQ(total, Rational(1)) << sys.label() << " k=" << k;
    }
  }
}

TEST(MinDigitGap, Examples) {
  EXPECT_EQ(cantorkit::min_digit_gap(Stage(Rational(1, 3), digits({0, 2})), 1), Rational(2));
  EXPECT_EQ(cantorkit::min_digit_gap(Stage(Rational(1, 9), digits({0, 4, 8})), 2), Rational(8));
  EXPECT_EQ(cantorkit::min_digit_gap(Stage(Rational(1, 9), digits({0, 3, 8})), 1), Rational(3));
  EXPECT_EQ(cantorkit::min_digit_gap_at(Stage(Rational(1, 9), digits({0, 5, 8})), 1).second, 1u);
  EXPECT_THROW((void)cantorkit::min_digit_gap(Stage(Rational(1, 3), digits({0, 2})), 2), cantorkit::DomainError);
  EXPECT_THROW((void)cantorkit::min_digit_gap(Stage(Rational(1, 3), digits({0, 2})), 0), cantorkit::DomainError);
}

TEST(MinDigitGap, SeparationRuleOnAllPresets) {
  for (const auto& sys : all_presets())
    for (std::size_t k = 1; k <= sys.distinct_stages(); ++k)
      EXPECT_GT(cantorkit::min_digit_gap(sys.stage_at(k), 1), Rational(1)) << sys.label();
}

TEST(DigitSet, ProgressionMatchesList) {
  const DigitSet p = DigitSet::progression(Rational(0), Rational(5, 2), 4);
  const DigitSet l = DigitSet::list({Rational(0), Rational(5, 2), Rational(5), Rational(15, 2)});
  EXPECT_TRUE(p == l);
  EXPECT_EQ(p.materialize(), l.materialize());
  EXPECT_EQ(p.back(), Rational(15, 2));
  const Stage a(Rational(1, 9), p);
  const Stage b(Rational(1, 9), l);
  for (std::size_t alpha = 1; alpha < 4; ++alpha)
    EXPECT_EQ(cantorkit::min_digit_gap(a, alpha), cantorkit::min_digit_gap(b, alpha));
}

TEST(Preset, NamedInstances) {
  const auto mt = preset("middle_thirds");
  EXPECT_EQ(mt.tail().kind, cantorkit::TailKind::kConstant);
  EXPECT_EQ(mt.stage_at(5).beta(), Rational(1, 3));
  EXPECT_EQ(mt.stage_at(5).digits().materialize(), digits({0, 2}));

  const auto e31 = preset("example31", {{"n", "9"}, {"d", "4"}});
  EXPECT_EQ(e31.stage_at(1).beta(), Rational(1, 9));
  EXPECT_EQ(e31.stage_at(1).digits().materialize(), digits({0, 4, 8}));

  const auto h = preset("homogeneous", {{"beta", "1/5"}, {"m", "2"}});
  EXPECT_EQ(h.stage_at(1).digits().materialize(), digits({0, 4}));

  const auto harm = preset("harmonic", {{"K", "100"}});
  EXPECT_EQ(harm.max_stage(), 100u);
  EXPECT_EQ(cantorkit::scale(harm, 99).b * Rational(cantorkit::scale(harm, 99).mu), Rational(1, 100));

  const auto ps = preset("pow_scaling", {{"K", "20"}});
  EXPECT_EQ(ps.stage_at(20).m(), 1u << 20);
  EXPECT_EQ(ps.stage_at(20).digits().back(), ps.stage_at(20).digit_bound());
}

TEST(Preset, RejectsParametersOutsideTheFamily) {
  EXPECT_THROW(preset("example31", {{"n", "9"}, {"d", "1"}}), std::invalid_argument);
  EXPECT_THROW(preset("example31", {{"n", "9"}, {"d", "7"}}), std::invalid_argument);
  EXPECT_THROW(preset("example31", {{"n", "9"}}), std::invalid_argument);
  EXPECT_THROW(preset("homogeneous", {{"beta", "1/3"}, {"m", "3"}}), std::invalid_argument);
  EXPECT_THROW(preset("pow_scaling", {{"alpha", "2/5"}}), std::invalid_argument);
  EXPECT_THROW(preset("middle_thirds", {{"x", "1"}}), std::invalid_argument);
  EXPECT_THROW(preset("nope"), std::invalid_argument);
}

}  // namespace
