#include <gtest/gtest.h>

#include "digitlang/dirichlet.hpp"
#include "digitlang/evilwords.hpp"
#include "test_support.hpp"

using namespace digitlang;

TEST(EvilWords, CountsAgainstEnumeration) {
  for (int n = 0; n <= 16; ++n) {
    EXPECT_EQ(evil::count_LJ(n), testsupport::naive_count(preset("LJ"), n)) << n;
    EXPECT_EQ(evil::count_LJ_prime(n), testsupport::naive_count(preset("LJprime"), n)) << n;
  }
}

TEST(EvilWords, ClosedFormAgreesWithRecurrence) {
  auto u = evil::count_series(3000);
  for (std::uint64_t n = 2; n <= 3000; n += 7) EXPECT_EQ(evil::count_LJ_closed(n), u[n]) << n;
  EXPECT_THROW(evil::count_LJ_closed(1), DomainError);
}

TEST(EvilWords, OccurrenceCountsByHand) {
  // t[0..7] = 0 1 1 0 1 0 0 1
  auto c = evil::occurrence_counters(8);
  EXPECT_EQ(c.e1, 4u);
  EXPECT_EQ(c.e00, 1u);
  EXPECT_EQ(c.e10, 2u);
  EXPECT_EQ(c.e11, 1u);
  EXPECT_EQ(c.e01, 3u);
}

TEST(EvilWords, WitnessAndEnvelope) {
  auto w = evil::nonregularity_witness(12);
  EXPECT_TRUE(w.all_match());
  EXPECT_EQ(w.rows[3].representation, "10111");
  auto g = evil::growth_envelope(2000);
  EXPECT_LE(g.c1, g.c2);
}

TEST(EvilWords, FixedLengthAutomatonCountsLJ) {
  evil::FixedLengthAutomaton a{LeadingZeros::Allowed};
  for (int n = 0; n <= 18; ++n) {
    // walk from the top position down, as the summatory DP does
    std::vector<BigInt> cur(a.num_states);
    cur[a.initial] = 1;
    for (int pos = n - 1; pos >= 0; --pos) {
      std::vector<BigInt> nxt(a.num_states);
      for (int q = 0; q < a.num_states; ++q)
        for (int d = 0; d < 2; ++d)
          if (int t = a.step(q, d, pos); t >= 0) nxt[t] += cur[q];
      cur = nxt;
    }
    EXPECT_EQ(cur[0] + cur[1], evil::count_LJ(n)) << n;
  }
}

TEST(EvilWords, ExactAbscissa) {
  auto a = evil::abscissa_LJ();
  EXPECT_EQ(a.symbolic, "log2(24)/6");
  EXPECT_NEAR(static_cast<double>(a.sigma()), std::log2(24.0) / 6, 1e-15);
}
