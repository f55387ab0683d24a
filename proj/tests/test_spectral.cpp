#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "digitlang/spectral.hpp"

using namespace digitlang;

TEST(Spectral, BerkowitzMatchesHandComputedPolynomials) {
  // [[0,1],[1,0]] -> x^2 - 1
  EXPECT_EQ(char_poly(IntMatrix{{0, 1}, {1, 0}}), (IntPolynomial{-1, 0, 1}));
  // companion matrix of x^3 - 2x^2 + 3x - 5
  IntMatrix c{{0, 0, 5}, {1, 0, -3}, {0, 1, 2}};
  EXPECT_EQ(char_poly(c), (IntPolynomial{-5, 3, -2, 1}));
}

TEST(Spectral, CayleyHamilton) {
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 1 + rng() % 5;
    IntMatrix A(n, n);
    for (auto& x : A.a) x = static_cast<int>(rng() % 7) - 3;
    EXPECT_TRUE(eval_matrix(char_poly(A), A).is_zero());
  }
}

TEST(Spectral, RealRootsOfProducts) {
  // (x - 3)(2x + 1)(x^2 - 2)
  IntPolynomial p = IntPolynomial{-3, 1} * IntPolynomial{1, 2} * IntPolynomial{-2, 0, 1};
  auto r = real_roots(p, 1e-12);
  ASSERT_EQ(r.size(), 4u);
  const long double want[] = {-std::sqrt(2.0L), -0.5L, std::sqrt(2.0L), 3};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(static_cast<double>(r[i].mid()), static_cast<double>(want[i]), 1e-12);
    EXPECT_LE(r[i].width(), tolerance(1e-12));
  }
  EXPECT_TRUE(r[3].exact());
  EXPECT_EQ(r[3].lo, 3);
}

TEST(Spectral, DominantRoots) {
  auto a = dominant_root(IntPolynomial{1, -10, 1});
  EXPECT_NEAR(static_cast<double>(a.mid()), 5 + 2 * std::sqrt(6.0), 1e-12);
  EXPECT_THROW(dominant_root(IntPolynomial{1, 0, 1}), NoDominantRealRoot);  // x^2 + 1
  auto tie = dominant_root(IntPolynomial{-1, 0, 1});  // +-1: ties in modulus are fine
  EXPECT_TRUE(tie.exact());
  EXPECT_EQ(tie.lo, 1);
}

TEST(Spectral, PisotVerdicts) {
  EXPECT_EQ(is_pisot(IntPolynomial{-1, -1, 1}), Verdict::Yes);   // golden ratio
  EXPECT_EQ(is_pisot(IntPolynomial{-1, -1, 0, 1}), Verdict::Yes);  // plastic number
  EXPECT_EQ(is_pisot(IntPolynomial{2, -3, 1}), Verdict::No);     // roots 1 and 2
  EXPECT_EQ(is_pisot(IntPolynomial{-2, 0, 1}), Verdict::No);     // sqrt 2 has conjugate -sqrt 2
  EXPECT_EQ(is_pisot(IntPolynomial{-9, -9, 1}), Verdict::Yes);   // conjugate about -0.908
}

TEST(Spectral, RootModuliCoverAllRoots) {
  IntPolynomial p = IntPolynomial{1, 0, 1} * IntPolynomial{-3, 1} * IntPolynomial{-3, 1} * IntPolynomial{0, 1};
  auto m = roots_moduli(p);
  int total = 0;
  for (const auto& r : m) {
    total += r.multiplicity;
    EXPECT_LE(r.lo, std::abs(r.approx) + 1e-12L);
    EXPECT_GE(r.hi, std::abs(r.approx) - 1e-12L);
  }
  EXPECT_EQ(total, p.degree());
}

TEST(Spectral, PrimitiveMatrices) {
  EXPECT_TRUE(is_primitive(IntMatrix{{1, 1}, {1, 0}}));
  EXPECT_FALSE(is_primitive(IntMatrix{{0, 1}, {1, 0}}));  // period 2
  EXPECT_FALSE(is_primitive(IntMatrix{{1, 1}, {0, 1}}));  // reducible
}

TEST(Spectral, DgCheckOnL1) {
  auto rep = linear_representation(dfao_from_spec(preset("L1")));
  auto dg = dg_applicable(rep);
  EXPECT_FALSE(dg.unique_dominant);
  auto dg100 = dg_applicable(lift_base(rep, 2));
  EXPECT_TRUE(dg100.applicable());
  auto pole = marked_simple_pole(lift_base(rep, 2));
  EXPECT_TRUE(pole.marked);
  EXPECT_NEAR(static_cast<double>(pole.value), std::log(5 + 2 * std::sqrt(6.0)) / std::log(10.0), 1e-10);
}

TEST(Spectral, CandidatePolesSolveBToTheZ) {
  std::vector<std::complex<long double>> eigs{{9, 0}, {0, 0}};
  std::vector<std::string> notes;
  auto c = candidate_poles(eigs, 10, {-1, 0, 1}, {0, 1}, &notes);
  EXPECT_EQ(c.size(), 6u);
  EXPECT_EQ(notes.size(), 1u);
  for (const auto& p : c) {
    // b^(z + l) = gamma
    auto v = std::exp((p.z + static_cast<long double>(p.l)) * std::log(10.0L));
    EXPECT_NEAR(static_cast<double>(v.real()), 9, 1e-9);
    EXPECT_NEAR(static_cast<double>(v.imag()), 0, 1e-9);
  }
}
