#include <gtest/gtest.h>

#include <random>

#include "digitlang/cluster.hpp"

using namespace digitlang;

namespace {

// words of length n over m letters with no pattern as a factor
long long avoiders(const PatternSet& ps, int n) {
  std::vector<int> w(n, 0);
  long long c = 0;
  while (true) {
    bool ok = true;
    for (const auto& p : ps.patterns)
      if (std::search(w.begin(), w.end(), p.begin(), p.end()) != w.end()) ok = false;
    if (ok) ++c;
    int j = n - 1;
    while (j >= 0 && w[j] == ps.m - 1) w[j--] = 0;
    if (j < 0) break;
    ++w[j];
  }
  return c;
}

}  // namespace

TEST(Cluster, PrimedEncodingsGiveTheClosedForms) {
  auto f1 = gj_generating_function(primed_alphabet_patterns(10, {{1, 2}}, {{8, 9}}));
  EXPECT_EQ(to_string(f1), "[1, 10, -1] / [1, -10, 1]");
  auto f2 = gj_generating_function(primed_alphabet_patterns(10, {{1, 2}}, {{2, 1}}));
  EXPECT_EQ(to_string(f2), "[1, 11, 9] / [1, -9, -9]");
  auto f0 = gj_generating_function(primed_alphabet_patterns(10, {}, {}));
  EXPECT_EQ(to_string(f0), "[1, 10] / [1, -10]");
}

TEST(Cluster, SmallCasesByHand) {
  EXPECT_EQ(to_string(gj_generating_function({3, {}})), "[1] / [1, -3]");
  // binary words without 11: Fibonacci
  EXPECT_EQ(to_string(gj_generating_function({2, {{1, 1}}})), "[1, 1] / [1, -1, -1]");
}

TEST(Cluster, RandomPatternSetsAgainstEnumeration) {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 120; ++trial) {
    PatternSet ps;
    ps.m = 2 + rng() % 2;
    int k = 1 + rng() % 3;
    for (int i = 0; i < k; ++i) {
      Word p(1 + rng() % 4);
      for (auto& a : p) a = rng() % ps.m;
      ps.patterns.push_back(p);
    }
    auto f = gj_generating_function(ps);
    auto c = gf_coefficients(f, 9);
    for (int n = 0; n <= 9; ++n) ASSERT_EQ(c[n], avoiders(ps, n)) << "trial " << trial << " n " << n;
  }
}

TEST(Cluster, PrimedCountsAgainstEnumeration) {
  auto ps = primed_alphabet_patterns(3, {{1, 2}}, {{2, 2}});
  auto c = gf_coefficients(gj_generating_function(ps), 6);
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(c[n], avoiders(ps, n)) << n;
}

TEST(Cluster, ReduceDropsRedundantPatterns) {
  auto r = reduce({2, {{0, 1}, {0, 1}, {1, 0, 1, 1}, {1}}});
  EXPECT_EQ(r.patterns, (std::vector<Word>{{1}}));
  EXPECT_THROW(reduce({2, {{}}}), InvalidSpec);
  EXPECT_THROW(reduce({0, {}}), InvalidSpec);
  EXPECT_THROW(reduce({2, {{2}}}), InvalidSpec);
}

TEST(Cluster, PrimedEncodingRejectsLongBlocks) {
  try {
    primed_alphabet_patterns(10, {{1, 2, 3}}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), 3);
  }
}

TEST(Cluster, NormalizeCancelsCommonFactors) {
  // (1 - x^2) / ((1 - x)(1 - 2x)) = (1 + x) / (1 - 2x)
  RationalGF f{IntPolynomial{1, 0, -1}, IntPolynomial{1, -3, 2}};
  EXPECT_EQ(normalize(f), (RationalGF{IntPolynomial{1, 1}, IntPolynomial{1, -2}}));
  RationalGF g{IntPolynomial{-2}, IntPolynomial{-2, 4}};
  EXPECT_EQ(normalize(g), (RationalGF{IntPolynomial{1}, IntPolynomial{1, -2}}));
  EXPECT_THROW(normalize({IntPolynomial{1}, IntPolynomial{0, 1}}), DomainError);
}
