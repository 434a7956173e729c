#include <gtest/gtest.h>

#include "cantorkit/geometry.hpp"
#include "cantorkit/presets.hpp"

namespace {

using cantorkit::CantorSystem;
using cantorkit::Rational;
using cantorkit::Stage;
using cantorkit::TailRule;
using cantorkit::Word;
using cantorkit::preset;

Word W(std::initializer_list<std::size_t> xs) { return Word{std::vector<std::size_t>(xs)}; }

CantorSystem nine_048() {
  return CantorSystem({}, TailRule::constant(Stage(Rational(1, 9), {Rational(0), Rational(4), Rational(8)})));
}

std::vector<CantorSystem> presets_for_geometry() {
  return {preset("middle_thirds"),
          preset("example31", {{"n", "9"}, {"d", "4"}}),
          preset("example31", {{"n", "9"}, {"d", "2"}}),
          preset("homogeneous", {{"beta", "1/7,1/4"}, {"m", "3,2"}}),
          preset("harmonic", {{"K", "8"}}),
          preset("pow_scaling", {{"K", "3"}}),
          preset("remark614a"),
          preset("remark614b")};
}

// Every word pair at stage k, in order of the left endpoints.
template <class F>
void for_each_pair(const CantorSystem& sys, std::size_t k, F&& f) {
  const auto basic = cantorkit::basic_intervals(sys, k);
  for (std::size_t a = 0; a < basic.size(); ++a)
    for (std::size_t b = a; b < basic.size(); ++b) f(basic, a, b);
}

TEST(Endpoint, MiddleThirds) {
  const auto mt = preset("middle_thirds");
  EXPECT_EQ(cantorkit::endpoint(mt, W({1})), Rational(2, 3));
  EXPECT_EQ(cantorkit::endpoint(mt, W({1, 1})), Rational(8, 9));
  EXPECT_EQ(cantorkit::endpoint(mt, W({0, 0, 0})), Rational(0));
  EXPECT_THROW(cantorkit::endpoint(mt, W({2})), cantorkit::DomainError);
}

TEST(BasicIntervals, SmallStages) {
  const auto mt = preset("middle_thirds");
  const auto k0 = cantorkit::basic_intervals(mt, 0);
  ASSERT_EQ(k0.size(), 1u);
  EXPECT_EQ(k0[0].left, Rational(0));
  EXPECT_EQ(k0[0].right(), Rational(1));

  const auto k1 = cantorkit::basic_intervals(mt, 1);
  ASSERT_EQ(k1.size(), 2u);
  EXPECT_EQ(k1[0].right(), Rational(1, 3));
  EXPECT_EQ(k1[1].left, Rational(2, 3));
  EXPECT_EQ(k1[1].right(), Rational(1));

  const auto k2 = cantorkit::basic_intervals(mt, 2);
  std::vector<Rational> lefts;
  for (const auto& b : k2) lefts.push_back(b.left);
  EXPECT_EQ(lefts, (std::vector<Rational>{0, Rational(2, 9), Rational(2, 3), Rational(8, 9)}));
}

TEST(BasicIntervals, BudgetIsEnforced) {
  EXPECT_THROW(cantorkit::basic_intervals(preset("middle_thirds"), 11, 1000), cantorkit::BudgetExceeded);
  EXPECT_NO_THROW(cantorkit::basic_intervals(preset("middle_thirds"), 10, 1024));
}

TEST(BasicIntervals, OrderedDisjointAndNested) {
  for (const auto& sys : presets_for_geometry()) {
    for (std::size_t k = 1; k <= 6 && sys.reachable(k); ++k) {
      if (cantorkit::scale(sys, k).mu > 20000) break;
      const auto cur = cantorkit::basic_intervals(sys, k);
      const auto parent = cantorkit::basic_intervals(sys, k - 1);
      ASSERT_EQ(cantorkit::BigInt(static_cast<unsigned long>(cur.size())), cantorkit::scale(sys, k).mu);
      const auto scaled = cantorkit::scaled_lefts(sys, k);
      const Rational bk = cantorkit::scale(sys, k).b;
      for (std::size_t i = 0; i < cur.size(); ++i) {
        EXPECT_EQ(scaled[i] * bk, cur[i].left);
        EXPECT_EQ(cantorkit::word_at(sys, k, i), cur[i].word);
        if (i + 1 < cur.size()) {
          EXPECT_LT(cur[i].right(), cur[i + 1].left) << sys.label() << " k=" << k;
        }
        const auto& par = parent[i / sys.stage_at(k).m()];
        EXPECT_LE(par.left, cur[i].left);
        EXPECT_LE(cur[i].right(), par.right());
      }
    }
  }
}

TEST(MakeSimple, Examples) {
  const auto mt = preset("middle_thirds");
  const auto full = cantorkit::make_simple(mt, W({0, 0}), W({1, 1}));
  EXPECT_EQ(full.length, Rational(1));
  EXPECT_EQ(full.count, 4);

  const auto mixed = cantorkit::make_simple(mt, W({0, 1}), W({1, 0}));
  EXPECT_EQ(mixed.length, Rational(5, 9));
  EXPECT_EQ(mixed.count, 2);
  EXPECT_EQ(mixed.alphas, (std::vector<long>{1, -1}));

  const auto same = cantorkit::make_simple(mt, W({1, 0, 1}), W({1, 0, 1}));
  EXPECT_EQ(same.length, Rational(1, 27));
  EXPECT_EQ(same.count, 1);

  EXPECT_THROW(cantorkit::make_simple(mt, W({1, 0}), W({0, 1})), cantorkit::DomainError);
  EXPECT_THROW(cantorkit::make_simple(mt, W({1}), W({0, 1})), cantorkit::DomainError);
}

TEST(MakeSimple, CountAndLengthMatchEnumeration) {
  for (const auto& sys : presets_for_geometry()) {
    for (std::size_t k = 1; k <= 5 && sys.reachable(k); ++k) {
      if (cantorkit::scale(sys, k).mu > 128) break;
      for_each_pair(sys, k, [&](const auto& basic, std::size_t a, std::size_t b) {
        const auto p = cantorkit::make_simple(sys, basic[a].word, basic[b].word);
        EXPECT_EQ(p.length, basic[b].right() - basic[a].left);
        // Count the enumerated intervals inside the hull by brute force.
        long inside = 0;
        for (const auto& c : basic) inside += (basic[a].left <= c.left && c.right() <= basic[b].right());
        EXPECT_EQ(p.count, inside);
        EXPECT_EQ(p.count, static_cast<long>(b - a + 1));
      });
    }
  }
}

TEST(ConsecutiveGap, Examples) {
  const auto mt = preset("middle_thirds");
  EXPECT_EQ(cantorkit::consecutive_gap(mt, 2, 0), Rational(1, 9));
  EXPECT_EQ(cantorkit::consecutive_gap(mt, 1, 0), Rational(1, 3));
  EXPECT_EQ(cantorkit::consecutive_gap(nine_048(), 1, 1), Rational(3, 9));
  const auto info = cantorkit::consecutive_gap_info(mt, 2, 0);
  EXPECT_EQ(info.level, 2u);
  EXPECT_EQ(info.bound, Rational(1, 9));
}

TEST(ConsecutiveGap, PositiveAndAboveBranchingBound) {
  for (const auto& sys : presets_for_geometry()) {
    for (std::size_t k = 1; k <= 6 && sys.reachable(k); ++k) {
      if (cantorkit::scale(sys, k).mu > 5000) break;
      const auto basic = cantorkit::basic_intervals(sys, k);
      for (std::size_t i = 0; i + 1 < basic.size(); ++i) {
        const auto g = cantorkit::consecutive_gap_info(sys, k, i);
        EXPECT_EQ(g.gap, basic[i + 1].left - basic[i].right());
        EXPECT_GT(g.gap, Rational(0));
        EXPECT_GE(g.gap, g.bound) << sys.label() << " k=" << k << " i=" << i;
      }
    }
  }
}

TEST(NormalizePositive, Examples) {
  const auto mt = preset("middle_thirds");
  const auto p = cantorkit::make_simple(mt, W({0, 1}), W({1, 0}));
  const auto q = cantorkit::normalize_positive(mt, p);
  EXPECT_EQ(q.lower, W({0, 0}));
  EXPECT_EQ(q.upper, W({0, 1}));
  EXPECT_EQ(q.length, Rational(1, 3));
  EXPECT_EQ(q.count, 2);

  const auto pos = cantorkit::make_simple(mt, W({0, 1, 0}), W({1, 1, 1}));
  const auto same = cantorkit::normalize_positive(mt, pos);
  EXPECT_EQ(same.lower, pos.lower);
  EXPECT_EQ(same.upper, pos.upper);

  const auto basic = cantorkit::make_simple(mt, W({1, 0, 1}), W({1, 0, 1}));
  EXPECT_EQ(cantorkit::normalize_positive(mt, basic).lower, basic.lower);

  const auto narrow = preset("remark614b");  // first stage has a gap of 9/5 < 2
  EXPECT_THROW(cantorkit::normalize_positive(narrow, cantorkit::make_simple(narrow, W({0}), W({1}))),
               cantorkit::DomainError);
}

TEST(NormalizePositive, ConclusionsHoldForAllSimpleIntervals) {
  std::vector<CantorSystem> systems = {preset("middle_thirds"), preset("example31", {{"n", "9"}, {"d", "4"}}),
                                       preset("homogeneous", {{"beta", "1/7,1/4"}, {"m", "3,2"}}),
                                       preset("remark614a")};
  for (const auto& sys : systems) {
    for (std::size_t k = 1; k <= 5; ++k) {
      if (cantorkit::scale(sys, k).mu > 250) break;
      for_each_pair(sys, k, [&](const auto& basic, std::size_t a, std::size_t b) {
        const auto p = cantorkit::make_simple(sys, basic[a].word, basic[b].word);
        const auto q = cantorkit::normalize_positive(sys, p);
        EXPECT_EQ(q.count, p.count);
        EXPECT_LE(q.length, p.length);
        for (long alpha : q.alphas) EXPECT_GE(alpha, 0);
      });
    }
  }
}

}  // namespace
