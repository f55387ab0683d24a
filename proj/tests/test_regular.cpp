#include <gtest/gtest.h>

#include "digitlang/regular.hpp"
#include "test_support.hpp"

using namespace digitlang;

namespace {

bool naive_char(const LanguageSpec& s, std::uint64_t n) {
  return testsupport::naive_member(s, testsupport::digits_of(n, base_of(s)));
}

}  // namespace

TEST(Regular, DfaoComputesTheCharacteristicSequence) {
  testsupport::SpecGen gen(5);
  for (int trial = 0; trial < 150; ++trial) {
    auto s = gen.any();
    auto d = dfao_from_spec(s);
    for (std::uint64_t n = 0; n < 800; ++n) ASSERT_EQ(d.value(n), naive_char(s, n) ? 1 : 0) << to_json(s).dump() << " " << n;
  }
}

TEST(Regular, MinimizationIsIdempotentAndSmall) {
  auto d = dfao_from_spec(preset("L1"));
  auto m = minimize(d);
  EXPECT_EQ(m.num_states, d.num_states);
  // n -> [n is a power of 2]: initial, "seen the 1", dead
  EXPECT_EQ(dfao_from_spec(preset("powers2")).num_states, 3);
  EXPECT_EQ(dfao_from_spec(preset("kempner")).num_states, 2);
}

TEST(Regular, KernelOfL1) {
  auto d = dfao_from_spec(preset("L1"));
  EXPECT_EQ(kernel_sequences(d, 3).size(), 5u);
  EXPECT_EQ(d.num_states, 5);
}

TEST(Regular, EvilLanguageHasNoDfao) { EXPECT_THROW(dfao_from_spec(preset("LJ")), NonRegular); }

TEST(Regular, LinearRepresentationsAgree) {
  testsupport::SpecGen gen(17);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = gen.any();
    auto rep = linear_representation(dfao_from_spec(s));
    auto t = trim(rep);
    auto m = minimize(rep);
    auto lifted = lift_base(rep, 2);
    EXPECT_LE(m.dim(), t.dim());
    for (std::uint64_t n = 0; n < 300; ++n) {
      Rational want = naive_char(s, n) ? 1 : 0;
      ASSERT_EQ(rep.value(n), want);
      ASSERT_EQ(t.value(n), want);
      ASSERT_EQ(m.value(n), want);
      ASSERT_EQ(lifted.value(n), want);
    }
  }
}

TEST(Regular, LiftedDfaoMatches) {
  auto d = dfao_from_spec(preset("L2"));
  auto d100 = lift_dfao(d, 2);
  EXPECT_EQ(d100.base, 100);
  for (std::uint64_t n = 0; n < 5000; ++n) ASSERT_EQ(d100.value(n), d.value(n)) << n;
}

TEST(Regular, Exports) {
  auto d = dfao_from_spec(preset("kempner"));
  auto dot = to_dot(d, "k");
  EXPECT_NE(dot.find("digraph k"), std::string::npos);
  auto j = to_json(linear_representation(d));
  EXPECT_EQ(j["base"], 10);
  EXPECT_EQ(j["M"].size(), 10u);
}
