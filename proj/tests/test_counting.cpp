#include <gtest/gtest.h>

#include "digitlang/counting.hpp"
#include "test_support.hpp"

using namespace digitlang;

TEST(Counting, PublishedPrefixes) {
  auto v = [](const char* name, std::size_t n) { return count_series(preset(name), n).values; };
  EXPECT_EQ(v("L1", 4), (std::vector<BigInt>{1, 9, 89, 881, 8721}));
  EXPECT_EQ(v("L5", 6), (std::vector<BigInt>{1, 9, 88, 872, 8534, 84566, 827622}));
  EXPECT_EQ(v("LJ", 6), (std::vector<BigInt>{1, 2, 3, 6, 12, 18, 36}));
  // leading-zero words of L2 avoiding 12/21 are counted by 1, 10, 99, 981, ...
  EXPECT_EQ(v("L2prime", 4), (std::vector<BigInt>{1, 10, 99, 981, 9720}));
}

TEST(Counting, RandomSpecsAgainstEnumeration) {
  testsupport::SpecGen gen(99);
  for (int trial = 0; trial < 300; ++trial) {
    auto s = gen.any();
    int n_max = base_of(s) == 2 ? 10 : 6;
    auto c = count_series(s, n_max).values;
    for (int n = 0; n <= n_max; ++n) ASSERT_EQ(c[n], testsupport::naive_count(s, n)) << to_json(s).dump() << " n=" << n;
  }
}

TEST(Counting, BruteCountGuardsItsBudget) {
  EXPECT_THROW(brute_count(preset("L1"), 9), ResourceError);
}

TEST(Counting, FitRecurrenceOnKnownSequences) {
  auto fib = std::vector<BigInt>{1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
  auto rec = fit_recurrence(fib, 4);
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->coeffs, (std::vector<Rational>{1, 1}));
  EXPECT_EQ(rec->characteristic_polynomial(), (std::vector<BigInt>{-1, -1, 1}));

  auto aa = fit_recurrence(count_series(preset("aa10"), 12).values, 4);
  ASSERT_TRUE(aa);
  EXPECT_EQ(aa->coeffs, (std::vector<Rational>{9, 9}));

  // 2^n + n^2 needs order 4; with max order 2 nothing fits
  std::vector<BigInt> mixed;
  for (int n = 0; n < 14; ++n) mixed.push_back((BigInt(1) << n) + n * n);
  EXPECT_FALSE(fit_recurrence(mixed, 2));
  auto r4 = fit_recurrence(mixed, 5);
  ASSERT_TRUE(r4);
  EXPECT_EQ(r4->order(), 4u);
  EXPECT_THROW(fit_recurrence(fib, 6), DomainError);
}

TEST(Counting, DifferenceAndPartialSumInvert) {
  std::vector<BigInt> v{3, 1, 4, 1, 5, 9, 2, 6};
  auto p = partial_sum(v);
  auto d = first_difference(p);
  EXPECT_EQ(d, std::vector<BigInt>(v.begin() + 1, v.end()));
  EXPECT_THROW(first_difference({}), DomainError);
}
