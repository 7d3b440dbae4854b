#include <gtest/gtest.h>

#include <cmath>

#include "shc/atr_cycles.hpp"
#include "shc/errors.hpp"

using namespace shc;

namespace {

// a + b sqrt 5
QuadElement r5(long a, long b) { return {5, mpq_class(2 * a), mpq_class(2 * b)}; }

std::complex<double> act0(const FMat& m, std::complex<double> z) {
  return (sigma0(m.a) * z + sigma0(m.b)) / (sigma0(m.c) * z + sigma0(m.d));
}
double act1(const FMat& m, double z) {
  return (sigma1(m.a) * z + sigma1(m.b)) / (sigma1(m.c) * z + sigma1(m.d));
}

}  // namespace

TEST(Atr, SignPattern) {
  BaseField F = make_base_field(5);
  EXPECT_TRUE(is_atr(F, r5(1, -3)));
  EXPECT_NEAR(sigma0(r5(1, -3)), 1 - 3 * std::sqrt(5.0), 1e-12);
  EXPECT_FALSE(is_atr(F, r5(-1, 0)));
  EXPECT_FALSE(is_atr(F, r5(-3, 1)));
  for (long a = -12; a <= 12; ++a)
    for (long b = -12; b <= 12; ++b) {
      QuadElement d = r5(a, b);
      QuadElement root;
      if (d.norm() == 0 || (sigma0(d) > 0 && sigma1(d) > 0 && sqrt_in_ZF(d, root))) continue;
      const double s0 = a + b * std::sqrt(5.0), s1 = a - b * std::sqrt(5.0);
      EXPECT_EQ(is_atr(F, d), s0 < 0 && s1 > 0) << a << " " << b;
    }
  EXPECT_THROW(is_atr(F, r5(9, 0)), MathError);
}

TEST(Atr, CycleOfPureForm) {
  BaseField F = make_base_field(5);
  QuadElement delta = r5(1, -3);
  ATRExtension ext = make_atr_extension(F, delta, r5(1, 0));
  // (1, 0, -delta) has discriminant 4 delta, so it belongs to f^2 dK when dK = 4 delta
  ASSERT_EQ(ext.dK, r5(4, -12));
  RelForm q{r5(1, 0), r5(0, 0), -delta};
  ATRCycle c = atr_cycle_from_form(q, ext);
  EXPECT_NEAR(c.tau0.real(), 0, 1e-14);
  EXPECT_NEAR(c.tau0.imag(), std::sqrt(3 * std::sqrt(5.0) - 1), 1e-12);
  EXPECT_NEAR(c.end_hi, std::sqrt(1 + 3 * std::sqrt(5.0)), 1e-12);
  EXPECT_NEAR(c.end_lo, -std::sqrt(1 + 3 * std::sqrt(5.0)), 1e-12);
  FMat W2 = fmat_mul(c.W, c.W);
  QuadElement D = ext.f * ext.f * ext.dK;
  EXPECT_TRUE(fmat_equal(W2, FMat{D, r5(0, 0), r5(0, 0), D}));
}

TEST(Atr, StabilizerUnits) {
  BaseField F = make_base_field(5);
  for (auto [a, b] : {std::pair{1L, -3L}, {3L, -2L}, {1L, -1L}, {2L, -1L}}) {
    ATRExtension ext = make_atr_extension(F, r5(a, b), r5(1, 0));
    ATRCycle c = atr_cycle_from_form(principal_rel_form(ext), ext);
    EXPECT_GT(c.tau0.imag(), 0);
    StabilizerUnit u = unit_stabilizer_search(ext, 200);
    EXPECT_EQ(abs(k_norm(ext, u.u).norm()), 1);
    EXPECT_FALSE(u.y.norm() == 0);  // not in Z_F
    EXPECT_TRUE(u.all_powers);
    EXPECT_GT(u.rho, 1);
    FMat g = psi(c, ext, u.x, u.y);
    EXPECT_LT(std::abs(act0(g, c.tau0) - c.tau0), 1e-9);
    EXPECT_NEAR(act1(g, c.end_lo), c.end_lo, 1e-9 * std::max(1.0, std::abs(c.end_lo)));
    EXPECT_NEAR(act1(g, c.end_hi), c.end_hi, 1e-9 * std::max(1.0, std::abs(c.end_hi)));
  }
}

TEST(Atr, DiscriminantNorms) {
  BaseField F = make_base_field(5);
  ATRExtension e1 = make_atr_extension(F, r5(1, -3), r5(1, 0));
  ATRDiscriminant d1 = atr_discriminant_norm(e1);
  EXPECT_EQ(d1.norm, 704);  // 16 |1 - 45|
  EXPECT_EQ(d1.toral, 16 * 704);
  ATRExtension e2 = make_atr_extension(F, r5(1, -3), r5(1, 1));
  EXPECT_EQ(atr_discriminant_norm(e2).norm, 704 * 16);  // |N(1 + sqrt 5)|^2 = 16
  ATRExtension e3 = make_atr_extension(F, r5(1, -3), r5(3, 0));
  EXPECT_EQ(atr_discriminant_norm(e3).norm, 704 * 81);
}

TEST(Atr, RejectsBadInput) {
  BaseField F = make_base_field(5);
  EXPECT_THROW(make_atr_extension(F, r5(-1, 0), r5(1, 0)), MathError);
  EXPECT_THROW(make_base_field(7), MathError);
}
