#include "dcnc/rational.h"

#include <random>

#include <gtest/gtest.h>

namespace dcnc {
namespace {

TEST(RationalTest, ParseAndRender) {
  EXPECT_EQ(Rational::Parse("3").ToString(), "3");
  EXPECT_EQ(Rational::Parse("-6/4").ToString(), "-3/2");
  EXPECT_EQ(Rational::Parse("+2/4").ToString(), "1/2");
  EXPECT_EQ(Rational::Parse("0/7").ToString(), "0");
  EXPECT_EQ(Rational(10, -4), Rational::Parse("-5/2"));
  Rational out;
  EXPECT_FALSE(Rational::TryParse("1.5", &out));
  EXPECT_FALSE(Rational::TryParse("2/-4", &out));
  EXPECT_FALSE(Rational::TryParse("1/0", &out));
  EXPECT_FALSE(Rational::TryParse(" 1", &out));
  EXPECT_FALSE(Rational::TryParse("", &out));
  EXPECT_THROW(Rational::Parse("x"), std::exception);
}

TEST(RationalTest, RoundTripIsCanonical) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const long n = static_cast<long>(rng() % 2001) - 1000;
    const long d = static_cast<long>(rng() % 99) + 1;
    const Rational q(n, d);
    EXPECT_EQ(Rational::Parse(q.ToString()), q);
    EXPECT_EQ(gcd(q.Numerator(), q.Denominator()), 1);
    EXPECT_GT(q.Denominator(), 0);
  }
}

TEST(RationalTest, ArithmeticAndOrder) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_LT(b, a);
  EXPECT_EQ(Rational(-7, 2).Floor(), -4);
  EXPECT_EQ(Rational(-7, 2).Abs(), Rational(7, 2));
  EXPECT_THROW(a / Rational(0), std::domain_error);
}

TEST(RationalTest, FormatTuple) {
  EXPECT_EQ(FormatTuple({Rational(0), Rational(1, 2)}), "(0,1/2)");
}

TEST(RationalTest, PsdKnownMatrices) {
  RationalMatrix m(2, 2);
  m(0, 0) = 4; m(0, 1) = -6; m(1, 0) = -6; m(1, 1) = 9;
  EXPECT_TRUE(IsPositiveSemidefinite(m));
  EXPECT_EQ(Determinant(m), Rational(0));
  m(1, 1) = Rational(8);
  EXPECT_FALSE(IsPositiveSemidefinite(m));
  RationalMatrix z(2, 2);
  z(1, 1) = -1;
  EXPECT_FALSE(IsPositiveSemidefinite(z));
  // zero pivot with a nonzero off-diagonal entry
  RationalMatrix h(2, 2);
  h(0, 1) = h(1, 0) = 1;
  EXPECT_FALSE(IsPositiveSemidefinite(h));
}

// LDL^T agrees with the principal-minor test on random symmetric matrices,
// including rank deficient Gram matrices.
TEST(RationalTest, PsdAgreesWithMinors) {
  std::mt19937_64 rng(11);
  auto draw = [&] { return Rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 2) + 1); };
  int psd_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    RationalMatrix m(n, n);
    if (trial % 2 == 0) {
      const int k = 1 + static_cast<int>(rng() % n);
      RationalMatrix b(k, n);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < n; ++c) b(r, c) = draw();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int r = 0; r < k; ++r) m(i, j) += b(r, i) * b(r, j);
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = draw();
    }
    const bool ldl = IsPositiveSemidefinite(m);
    EXPECT_EQ(ldl, IsPositiveSemidefiniteByMinors(m)) << "trial " << trial;
    psd_seen += ldl;
  }
  EXPECT_GT(psd_seen, 150);
}

}  // namespace
}  // namespace dcnc
