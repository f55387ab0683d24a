#include <gtest/gtest.h>

#include "digitlang/langspec.hpp"
#include "test_support.hpp"

using namespace digitlang;

TEST(LangSpec, PresetsRoundTripThroughJson) {
  for (const auto& name : preset_names()) {
    auto s = preset(name);
    auto j = to_json(s);
    auto back = parse_spec(j);
    EXPECT_EQ(to_json(back), j) << name;
  }
}

TEST(LangSpec, MembershipAgreesWithDefinition) {
  for (const auto& name : preset_names()) {
    auto s = preset(name);
    int b = base_of(s);
    int n_max = b == 2 ? 12 : 4;
    for (int n = 0; n <= n_max; ++n) {
      std::vector<int> w(n, 0);
      while (true) {
        ASSERT_EQ(membership(s, DigitWord{b, w}), testsupport::naive_member(s, w)) << name << " " << n;
        int j = n - 1;
        while (j >= 0 && w[j] == b - 1) w[j--] = 0;
        if (j < 0) break;
        ++w[j];
      }
    }
  }
}

TEST(LangSpec, CompiledAutomatonMatchesMembership) {
  testsupport::SpecGen gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = gen.any();
    auto a = compile(s);
    int b = base_of(s);
    for (std::uint64_t n = 0; n < 600; ++n) {
      auto w = testsupport::digits_of(n, b);
      ASSERT_EQ(a.accepts_word(DigitWord{b, w}), testsupport::naive_member(s, w))
          << to_json(s).dump() << " n=" << n;
    }
  }
}

TEST(LangSpec, ParseErrorsCarryJsonPaths) {
  auto expect_path = [](const char* text, const std::string& path) {
    try {
      parse_spec_text(text);
      FAIL() << "accepted " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.path, path) << e.what();
    }
  };
  expect_path(R"({"base": 10})", "$.kind");
  expect_path(R"({"kind": "nope", "base": 10})", "$.kind");
  expect_path(R"({"kind": "digit_restriction", "base": 1, "period": [[0]]})", "$.base");
  expect_path(R"({"kind": "periodic_blocks", "base": 10, "period_length": 2,
                  "forbidden": [{"residue": 0, "blocks": ["12", "1a"]}]})",
              "$.forbidden[0].blocks[1]");
  expect_path(R"({"kind": "power_avoidance", "base": 3, "letter": 3, "exponent": 2})", "$.letter");
  expect_path("{not json", "$");
}

TEST(LangSpec, RejectsDegenerateSpecs) {
  EXPECT_THROW(validate(DigitRestrictionSpec{10, {}, {{0}}, LeadingZeros::Forbidden}), InvalidSpec);
  EXPECT_THROW(validate(DigitRestrictionSpec{10, {}, {}, LeadingZeros::Forbidden}), InvalidSpec);
  EXPECT_THROW(validate(PowerAvoidanceSpec{4, 0, 0, LeadingZeros::Forbidden}), InvalidSpec);
  EXPECT_THROW(preset("nope"), Error);
}

TEST(LangSpec, RegularityFlag) {
  EXPECT_TRUE(is_regular(preset("L1")));
  EXPECT_FALSE(is_regular(preset("LJ")));
}
