#include <gtest/gtest.h>

#include <random>

#include "shc/errors.hpp"
#include "shc/padic.hpp"

using namespace shc;

namespace {

mpq_class random_rational(std::mt19937_64& rng, i64 p) {
  std::uniform_int_distribution<long> num(-100000, 100000), pk(-3, 3), den(1, 50);
  long d = den(rng);
  while (d % p == 0) d = den(rng);
  mpq_class q(num(rng), d);
  q *= pow_mpq(p, pk(rng));
  q.canonicalize();
  return q;
}

// dK / u must be a square mod p for an inert p; checks c^2 u == dK mod p^N directly
bool sqrt_ok(const Qp2Element& s, i64 dK, i64 p, long N) {
  mpz_class pN = pow_mpz(p, static_cast<unsigned long>(N));
  if (!s.x().is_zero() && s.x().valuation() < N) return false;
  mpz_class c = s.y().mod_pk(N);
  mpz_class r = c * c * s.u() - dK;
  return mpz_class(r % pN) == 0;
}

}  // namespace

TEST(Padic, RationalArithmetic) {
  std::mt19937_64 rng(3);
  for (i64 p : {3, 5, 7, 11}) {
    for (int i = 0; i < 2000; ++i) {
      mpq_class a = random_rational(rng, p), b = random_rational(rng, p);
      const long N = 30;
      PadicNumber A = PadicNumber::from_rational(a, p, N), B = PadicNumber::from_rational(b, p, N);
      EXPECT_TRUE(equal_at_precision(A * B, PadicNumber::from_rational(a * b, p, N)));
      EXPECT_TRUE(equal_at_precision(A + B, PadicNumber::from_rational(a + b, p, N)));
      EXPECT_TRUE(equal_at_precision(A - B, PadicNumber::from_rational(a - b, p, N)));
      if (b != 0) EXPECT_TRUE(equal_at_precision(A / B, PadicNumber::from_rational(a / b, p, N)));
      EXPECT_EQ(A.valuation(), a == 0 ? N : valuation(a, p));
    }
  }
}

TEST(Padic, PrecisionTracking) {
  PadicNumber x = PadicNumber::from_rational(mpq_class(9), 3, 10);
  EXPECT_EQ(x.valuation(), 2);
  EXPECT_EQ(x.abs_prec(), 12);
  PadicNumber y = PadicNumber::from_rational(mpq_class(9 + 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3), 3, 10);
  EXPECT_TRUE(equal_at_precision(x, y));
  PadicNumber d = x - y;  // cancellation loses relative precision
  EXPECT_TRUE(d.is_zero() || d.valuation() >= 12);
  EXPECT_EQ(PadicNumber::from_rational(mpq_class(1, 3), 3, 5).valuation(), -1);
}

TEST(Padic, LeastNonresidue) {
  EXPECT_EQ(least_nonresidue(3), 2);
  EXPECT_EQ(least_nonresidue(5), 2);
  EXPECT_EQ(least_nonresidue(7), 3);
  EXPECT_EQ(least_nonresidue(23), 5);
}

TEST(Hensel, SqrtOfDiscriminant) {
  for (i64 dK = 5; dK < 300; ++dK) {
    if (!is_fundamental_discriminant(dK)) continue;
    QuadField k = field_from_discriminant(dK);
    for (i64 p : {3, 5, 7, 11, 13}) {
      if (kronecker(dK, p) != -1) continue;
      for (long N : {2L, 10L, 40L}) {
        Qp2Element s = embed_sqrt_dK(k, p, N);
        EXPECT_TRUE(sqrt_ok(s, dK, p, N)) << dK << " " << p << " " << N;
        Qp2Element sq = s * s;
        EXPECT_TRUE(equal_at_precision(sq, Qp2Element::from_rational(mpq_class(dK), p, N)));
      }
    }
  }
}

TEST(Hensel, RejectsNonInertPrimes) {
  EXPECT_THROW(embed_sqrt_dK(make_field(3), 3, 40), MathError);   // dK = 12, ramified
  EXPECT_THROW(embed_sqrt_dK(make_field(5), 11, 40), MathError);  // 4^2 = 5 mod 11
  EXPECT_THROW(embed_sqrt_dK(make_field(5), 3, 1), MathError);
}

TEST(Qp2, MoebiusExamples) {
  const i64 p = 3;
  const long N = 30;
  Qp2Element a = Qp2Element::alpha(p, N);
  EXPECT_TRUE(equal_at_precision(moebius_qp2(RatMat::identity(), a), a));
  for (long x = -4; x <= 4; ++x)
    for (long y : {1L, 2L, 5L, 9L}) {
      Qp2Element want = Qp2Element::from_rational(mpq_class(x), p, N) +
                        Qp2Element::from_rational(mpq_class(y), p, N) * a;
      RatMat g{mpq_class(y), mpq_class(x), 0, 1};
      EXPECT_TRUE(equal_at_precision(moebius_qp2(g, a), want));
    }
  RatMat s{0, 1, 1, 0};
  Qp2Element inv = a * Qp2Element::from_rational(mpq_class(1, a.u()), p, N);
  EXPECT_TRUE(equal_at_precision(moebius_qp2(s, a), inv));
  EXPECT_TRUE(equal_at_precision(moebius_qp2(s, a) * a, Qp2Element::from_rational(1, p, N)));
}

TEST(Qp2, FieldArithmetic) {
  std::mt19937_64 rng(9);
  for (i64 p : {3, 5, 7}) {
    const long N = 25;
    for (int i = 0; i < 300; ++i) {
      Qp2Element a(PadicNumber::from_rational(random_rational(rng, p), p, N),
                   PadicNumber::from_rational(random_rational(rng, p), p, N), least_nonresidue(p));
      Qp2Element b(PadicNumber::from_rational(random_rational(rng, p), p, N),
                   PadicNumber::from_rational(random_rational(rng, p), p, N), least_nonresidue(p));
      EXPECT_TRUE(equal_at_precision((a * b).norm(), a.norm() * b.norm()));
      EXPECT_TRUE(equal_at_precision(a * a.inverse(), Qp2Element::from_rational(1, p, N)));
      EXPECT_TRUE(equal_at_precision((a + b) - b, a));
    }
  }
}

TEST(Fp2, ArithmeticAgainstTable) {
  for (i64 p : {3, 5, 7}) {
    const i64 u = least_nonresidue(p);
    for (i64 x1 = 0; x1 < p; ++x1)
      for (i64 y1 = 0; y1 < p; ++y1)
        for (i64 x2 = 0; x2 < p; ++x2)
          for (i64 y2 = 0; y2 < p; ++y2) {
            Fp2 got = fp2_mul({x1, y1}, {x2, y2}, p, u);
            EXPECT_EQ(got.x, mod(x1 * x2 + u * y1 * y2, p));
            EXPECT_EQ(got.y, mod(x1 * y2 + x2 * y1, p));
          }
    for (i64 x = 0; x < p; ++x)
      for (i64 y = 0; y < p; ++y) {
        if (x == 0 && y == 0) continue;
        Fp2 inv = fp2_inv({x, y}, p, u);
        EXPECT_EQ(fp2_mul({x, y}, inv, p, u), (Fp2{1, 0}));
      }
  }
}
