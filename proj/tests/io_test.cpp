#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cantorkit/io.hpp"
#include "cantorkit/presets.hpp"

namespace {

using cantorkit::CantorSystem;
using cantorkit::Rational;
using cantorkit::SpecError;
using cantorkit::parse_spec;
using cantorkit::preset;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kSpecs = CANTORKIT_SPEC_DIR;

std::vector<CantorSystem> all_presets() {
  return {preset("middle_thirds"),
          preset("example31", {{"n", "9"}, {"d", "4"}}),
          preset("example31", {{"n", "81"}, {"d", "40"}}),
          preset("homogeneous", {{"beta", "1/7,1/4"}, {"m", "3,2"}}),
          preset("harmonic"),
          preset("pow_scaling"),
          preset("pow_scaling", {{"q", "3"}, {"alpha", "1/3"}, {"K", "6"}}),
          preset("example613", {{"beta", "1/5,1/10"}, {"xi", "4/5,1"}}),
          preset("remark614a"),
          preset("remark614a", {{"n", "7"}, {"p", "3"}}),
          preset("remark614b")};
}

TEST(Spec, MiddleThirds) {
  const auto p = parse_spec("tail:\n  kind: constant\n  stages:\n    - beta: \"1/3\"\n      digits: [\"0\", \"2\"]\n");
  EXPECT_EQ(p.system.prefix().size(), 0u);
  EXPECT_EQ(p.system.tail().kind, cantorkit::TailKind::kConstant);
  EXPECT_TRUE(p.system.stage_at(5) == preset("middle_thirds").stage_at(1));
}

TEST(Spec, DecimalsAreExact) {
  const auto p = parse_spec("tail:\n  kind: constant\n  stages:\n    - beta: 0.1\n      digits: [0, 2.25, 9]\n");
  EXPECT_EQ(p.system.stage_at(1).beta(), Rational(1, 10));
  EXPECT_EQ(p.system.stage_at(1).digit(1), Rational(9, 4));
}

TEST(Spec, SemanticErrorsNameTheRule) {
  try {
    parse_spec("tail:\n  kind: constant\n  stages:\n    - beta: 0.5\n      digits: [0, 1.5]\n");
    FAIL() << "accepted beta 1/2";
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("beta must be < 1/2"), std::string::npos) << e.what();
    EXPECT_EQ(e.line(), 4);
  }
  try {
    parse_spec(slurp(kSpecs + "/invalid_separation.yaml"));
    FAIL() << "accepted digits 0, 1";
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("digit separation ≤ 1"), std::string::npos) << e.what();
    EXPECT_GT(e.line(), 0);
  }
}

TEST(Spec, SyntaxErrorsArePositioned) {
  try {
    parse_spec("tail:\n  kind: constant\n  stages: [\n");
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_GT(e.line(), 0);
  }
  try {
    parse_spec("tail:\n  kind: spiral\n");
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 9);
  }
  try {
    parse_spec("tail:\n  kind: constant\n  stages:\n    - beta: 1/3\n      digits: [0, two]\n");
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_EQ(e.line(), 5);
    EXPECT_NE(std::string(e.what()).find("two"), std::string::npos);
  }
  EXPECT_THROW(parse_spec("tail:\n  kind: constant\n  colour: red\n"), SpecError);
  EXPECT_THROW(parse_spec("- 1\n- 2\n"), SpecError);
}

TEST(Spec, SampleFilesParse) {
  for (const char* name : {"middle_thirds", "three_digit_counterexample", "example31_n9_d4", "mixed_prefix",
                           "truncated_harmonic"}) {
    EXPECT_NO_THROW(parse_spec(slurp(kSpecs + "/" + name + ".yaml"))) << name;
  }
  const auto mixed = parse_spec(slurp(kSpecs + "/mixed_prefix.yaml"));
  EXPECT_EQ(mixed.options.depth, 6u);
  EXPECT_EQ(mixed.options.budget, 1500u);
  EXPECT_EQ(mixed.options.precision, 192);
  EXPECT_TRUE(mixed.system.stage_at(4).digits().is_progression());
  const auto harmonic = parse_spec(slurp(kSpecs + "/truncated_harmonic.yaml")).system;
  EXPECT_EQ(harmonic.prefix(), preset("harmonic", {{"K", "8"}}).prefix());
  EXPECT_EQ(harmonic.declared_dimension(), preset("harmonic", {{"K", "8"}}).declared_dimension());
}

TEST(Spec, RoundTripsEveryPreset) {
  for (const auto& sys : all_presets()) {
    const std::string text = cantorkit::serialize_spec(sys);
    const auto back = parse_spec(text);
    EXPECT_TRUE(back.system == sys) << sys.label() << "\n" << text.substr(0, 400);
    EXPECT_EQ(cantorkit::serialize_spec(back.system), text);
  }
  cantorkit::SpecOptions opt{4, 100, 256};
  const auto back = parse_spec(cantorkit::serialize_spec(preset("middle_thirds"), opt));
  EXPECT_EQ(back.options, opt);
}

TEST(Spec, IrrationalDeclaredDimensionRoundTrips) {
  CantorSystem sys = preset("middle_thirds");
  sys.set_declared_dimension({cantorkit::log_ratio(2, 3), "declared_limit"});
  EXPECT_TRUE(parse_spec(cantorkit::serialize_spec(sys)).system == sys);
}

TEST(Report, MeasureBlockForMiddleThirds) {
  const auto sys = preset("middle_thirds");
  const auto dim = cantorkit::dimension(sys);
  const auto h = cantorkit::hausdorff_measure(sys, dim);
  const auto j = cantorkit::measure_json(dim, h, cantorkit::measure_L(sys, dim), "");
  EXPECT_EQ(j["s"], "log(2)/log(3)");
  EXPECT_EQ(j["L"], "1/1");
  EXPECT_EQ(j["hausdorff"], "1/1");
  EXPECT_EQ(j["certificate"], cantorkit::Json::array({"A1", "A2b"}));
}

TEST(Report, FailingAssumptionListsWitnesses) {
  const auto r = cantorkit::check_assumption(preset("example31", {{"n", "9"}, {"d", "2"}}),
                                             cantorkit::AssumptionKind::kThmMain);
  const auto j = cantorkit::assumption_json(r);
  EXPECT_EQ(j["outcome"], "fails");
  ASSERT_FALSE(j["witnesses"].empty());
  const auto& w = j["witnesses"][0];
  EXPECT_EQ(w["index"], cantorkit::Json::array({1, 1, 0, 1}));
  EXPECT_EQ(w["lhs"]["lo"], "3/1");
  EXPECT_EQ(w["rhs"]["lo"], "2/1");
}

TEST(Report, EmptyReportEchoesSystem) {
  const auto j = cantorkit::emit_report(preset("middle_thirds"), {});
  EXPECT_EQ(j.size(), 2u);
  EXPECT_EQ(j["schema"], "cantorkit.report/1");
  EXPECT_EQ(j["system"]["tail"]["stages"][0]["beta"], "1/3");
}

TEST(Report, EnclosuresCarryBits) {
  const auto j = cantorkit::to_json(cantorkit::pow_cert(Rational(1, 3), cantorkit::LogExpr(Rational(1, 2))));
  EXPECT_EQ(j["bits"], 128);
  EXPECT_EQ(j["approx"], "0.577350269190");
}

int count(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

TEST(Render, RowsAndSegments) {
  const std::string svg = cantorkit::render_svg(preset("middle_thirds"), 3);
  EXPECT_EQ(count(svg, "<g id=\"stage-"), 4);
  for (int k = 0; k <= 3; ++k) {
    const auto a = svg.find("<g id=\"stage-" + std::to_string(k) + "\"");
    const auto b = svg.find("</g>", a);
    EXPECT_EQ(count(svg.substr(a, b - a), "<rect"), 1 << k);
  }
  EXPECT_EQ(svg, cantorkit::render_svg(preset("middle_thirds"), 3));
}

TEST(Render, ExactOffsets) {
  const CantorSystem sys({}, cantorkit::TailRule::constant(cantorkit::Stage(Rational(1, 9), {0, 4, 8})));
  const std::string svg = cantorkit::render_svg(sys, 1);
  // canvas width 1000 from x = 20
  EXPECT_NE(svg.find("<rect x=\"20.0000\" y=\"50\" width=\"111.1111\""), std::string::npos) << svg;
  EXPECT_NE(svg.find("<rect x=\"464.4444\" y=\"50\" width=\"111.1111\""), std::string::npos);
  EXPECT_NE(svg.find("<rect x=\"908.8889\" y=\"50\" width=\"111.1111\""), std::string::npos);
  const std::string zero = cantorkit::render_svg(sys, 0);
  EXPECT_EQ(count(zero, "<rect x="), 1);
  EXPECT_NE(zero.find("<rect x=\"20.0000\" y=\"20\" width=\"1000.0000\""), std::string::npos);
  EXPECT_THROW(cantorkit::render_svg(preset("middle_thirds"), 13), cantorkit::BudgetExceeded);
}

}  // namespace
