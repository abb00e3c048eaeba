#include <gtest/gtest.h>

#include <random>

#include "tutteparity/cyclotomic.hpp"

namespace tp = tutteparity;
using tp::BigRational;
using tp::Cyc12;

namespace {

Cyc12 zeta() { return tp::root_of_unity(12, 1); }

Cyc12 random_element(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-4, 4), den(1, 3);
  return {BigRational(d(rng), den(rng)), BigRational(d(rng), den(rng)), BigRational(d(rng), den(rng)),
          BigRational(d(rng), den(rng))};
}

}  // namespace

TEST(RootOfUnity, Examples) {
  EXPECT_EQ(tp::root_of_unity(2, 1), Cyc12(-1));
  auto i = tp::root_of_unity(4, 1);
  EXPECT_EQ(i, tp::power(zeta(), 3));
  EXPECT_EQ(i * i, Cyc12(-1));
  auto w = tp::root_of_unity(3, 1);
  EXPECT_EQ(w, tp::power(zeta(), 2) - Cyc12(1));
  EXPECT_EQ(tp::power(w, 3), Cyc12(1));
  EXPECT_THROW(tp::root_of_unity(5, 1), tp::DomainError);
}

TEST(RootOfUnity, Orders) {
  for (int q : {1, 2, 3, 4, 6, 12})
    for (int k = 0; k < q; ++k) {
      auto x = tp::root_of_unity(q, k);
      int order = q / std::gcd(k, q);
      EXPECT_EQ(tp::power(x, order), Cyc12(1));
      for (int j = 1; j < order; ++j) EXPECT_NE(tp::power(x, j), Cyc12(1));
    }
}

TEST(Cyc12, ArithmeticExamples) {
  auto z2 = tp::power(zeta(), 2);
  EXPECT_EQ(z2 + tp::conj(z2), Cyc12(1));
  auto z3 = tp::power(zeta(), 3);
  EXPECT_EQ(z3 * z3, Cyc12(-1));
  EXPECT_EQ(tp::power(zeta(), 12), Cyc12(1));
  EXPECT_EQ(tp::power(zeta(), 6), Cyc12(-1));
}

TEST(Cyc12, MinimalPolynomial) {
  auto z = zeta();
  EXPECT_TRUE((tp::power(z, 4) - tp::power(z, 2) + Cyc12(1)).is_zero());
}

TEST(Cyc12, ToRational) {
  EXPECT_EQ(tp::to_rational(tp::power(zeta(), 6)), BigRational(-1));
  EXPECT_THROW(tp::to_rational(Cyc12(1) + tp::power(zeta(), 3)), tp::NotRational);
  EXPECT_EQ(tp::to_rational(Cyc12(BigRational(3, 4))), BigRational(3, 4));
}

TEST(Cyc12, RingAxiomsRandomized) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_element(rng), b = random_element(rng), c = random_element(rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(tp::conj(a * b), tp::conj(a) * tp::conj(b));
    EXPECT_EQ(tp::conj(a + b), tp::conj(a) + tp::conj(b));
    EXPECT_EQ(tp::conj(tp::conj(a)), a);
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Cyc12(1));
  }
}

TEST(Cyc12, NormOfRootTimesRational) {
  for (int j = 0; j < 12; ++j) {
    auto x = tp::power(zeta(), j) * BigRational(5, 3);
    EXPECT_TRUE((x * tp::conj(x)).is_rational());
    EXPECT_EQ(tp::to_rational(x * tp::conj(x)), BigRational(25, 9));
  }
}

TEST(Cyc12, ApproximationAgreesWithExactValue) {
  auto z = zeta();
  EXPECT_NEAR(z.approx().real(), std::sqrt(3.0) / 2, 1e-12);
  EXPECT_NEAR(z.approx().imag(), 0.5, 1e-12);
  EXPECT_NEAR(tp::real_part(tp::root_of_unity(3, 1)).approx().real(), -0.5, 1e-12);
}

TEST(Fourier, IndicatorExamples) {
  auto i = tp::root_of_unity(4, 1);
  auto f = tp::fourier_indicator(4, {0, 1});
  EXPECT_EQ(f[1], Cyc12(1) - i);
  EXPECT_EQ(f[0], Cyc12(2));

  auto w = tp::root_of_unity(3, 1);
  auto g = tp::fourier_indicator(6, {0, 1, 2});
  EXPECT_EQ(g[0], Cyc12(3));
  EXPECT_EQ(g[3], Cyc12(1));
  EXPECT_EQ(g[1], Cyc12(-2) * w);
  EXPECT_EQ(g[5], Cyc12(-2) * tp::conj(w));
  EXPECT_TRUE(g[2].is_zero());
  EXPECT_TRUE(g[4].is_zero());

  auto h = tp::fourier_indicator(2, {0});
  EXPECT_EQ(h[0], Cyc12(1));
  EXPECT_EQ(h[1], Cyc12(1));
}

TEST(Fourier, TransformSupportExamples) {
  EXPECT_EQ(tp::transform_support(3, {0}, {1}), (tp::ResidueSet{1, 2}));
  EXPECT_EQ(tp::transform_support(4, {0, 1}, {2, 3}), (tp::ResidueSet{1, 3}));
  EXPECT_EQ(tp::transform_support(2, {0}, {1}), (tp::ResidueSet{1}));
  EXPECT_THROW(tp::transform_support(3, {0}, {0}), tp::DomainError);
}

// Transforming twice and dividing by q gives l -> f(-l).
TEST(Fourier, InversionExhaustive) {
  for (int q : {2, 3, 4, 6})
    for (int mask = 0; mask < (1 << q); ++mask) {
      tp::ResidueSet s;
      for (int l = 0; l < q; ++l)
        if ((mask >> l) & 1) s.insert(l);
      auto twice = tp::fourier(q, tp::fourier_indicator(q, s));
      for (int l = 0; l < q; ++l) {
        BigRational expected = s.count((q - l) % q) ? 1 : 0;
        EXPECT_EQ(twice[l] * BigRational(1, q), Cyc12(expected)) << "q=" << q << " mask=" << mask;
      }
    }
}

// A unit in the support forces every unit into the support.
TEST(Fourier, SupportLemmaExhaustive) {
  for (int q : {2, 3, 4, 6}) {
    std::vector<int> units;
    for (int k = 1; k < q; ++k)
      if (std::gcd(k, q) == 1) units.push_back(k);
    int assignments = 1;
    for (int l = 0; l < q; ++l) assignments *= 3;
    for (int a = 0; a < assignments; ++a) {
      tp::ResidueSet s, s2;
      int t = a;
      for (int l = 0; l < q; ++l, t /= 3) {
        if (t % 3 == 1) s.insert(l);
        if (t % 3 == 2) s2.insert(l);
      }
      auto supp = tp::transform_support(q, s, s2);
      bool any = std::any_of(units.begin(), units.end(), [&](int k) { return supp.count(k); });
      bool all = std::all_of(units.begin(), units.end(), [&](int k) { return supp.count(k); });
      EXPECT_EQ(any, all) << "q=" << q;
    }
  }
}
