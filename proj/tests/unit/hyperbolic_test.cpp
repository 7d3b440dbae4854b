#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "shc/errors.hpp"
#include "shc/hyperbolic.hpp"

using namespace shc;

namespace {

// one T^k or S at a time, with the matrix kept alongside
FDReduction naive_reduce(UHPoint z) {
  IntMat g = IntMat::identity();
  for (int guard = 0; guard < 10000; ++guard) {
    if (z.real() > 0.5) {
      z -= 1.0;
      g = IntMat{1, -1, 0, 1} * g;
    } else if (z.real() <= -0.5) {
      z += 1.0;
      g = IntMat{1, 1, 0, 1} * g;
    } else if (std::norm(z) < 1) {
      z = -1.0 / z;
      g = IntMat{0, -1, 1, 0} * g;
    } else {
      break;
    }
  }
  if (std::norm(z) == 1 && z.real() < 0) {
    z = -1.0 / z;
    g = IntMat{0, -1, 1, 0} * g;
  }
  return {z, g, false};
}

bool in_domain(UHPoint z, double tol) {
  return std::abs(z.real()) <= 0.5 + tol && std::norm(z) >= 1 - tol;
}

UHPoint moebius_big(const BigMat& m, UHPoint z) {
  return (m.a.get_d() * z + m.b.get_d()) / (m.c.get_d() * z + m.d.get_d());
}

bool same_projective(const IntMat& x, const IntMat& y) { return x == y || x == -y; }

}  // namespace

TEST(FundamentalDomain, Examples) {
  FDReduction r = reduce_to_fundamental_domain({0, 1});
  EXPECT_NEAR(std::abs(r.z - UHPoint(0, 1)), 0, 1e-15);
  EXPECT_EQ(r.gamma, IntMat::identity());
  r = reduce_to_fundamental_domain({2, 1});
  EXPECT_NEAR(std::abs(r.z - UHPoint(0, 1)), 0, 1e-15);
  EXPECT_EQ(r.gamma, (IntMat{1, -2, 0, 1}));
  UHPoint z0(0.1, 0.1);
  r = reduce_to_fundamental_domain(z0);
  FDReduction want = naive_reduce(z0);
  EXPECT_NEAR(std::abs(r.z - want.z), 0, 1e-12);
  EXPECT_TRUE(same_projective(r.gamma, want.gamma)) << r.gamma << " vs " << want.gamma;
  EXPECT_THROW(reduce_to_fundamental_domain({0.3, -1}), MathError);
}

TEST(FundamentalDomain, AgreesWithStepwiseReducer) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ux(-20, 20), uy(-8, 1);
  for (int i = 0; i < 20000; ++i) {
    UHPoint z(ux(rng), std::pow(10.0, uy(rng)));
    FDReduction r = reduce_to_fundamental_domain(z);
    FDReduction want = naive_reduce(z);
    EXPECT_TRUE(in_domain(r.z, 1e-12)) << r.z;
    EXPECT_EQ(r.gamma.det(), 1);
    UHPoint back = moebius(r.gamma, z);
    EXPECT_LT(hyperbolic_distance(back, r.z), 1e-6) << z;
    // deep in the cusp of a far translate the two float orbits separate
    if (!r.boundary && z.imag() > 1e-3) {
      EXPECT_LT(hyperbolic_distance(r.z, want.z), 1e-6) << z;
    }
  }
}

TEST(Geodesic, EndpointsAndPeriods) {
  GeodesicArc g({1, 1, -1}, geodesic_period(5));
  const double s5 = std::sqrt(5.0);
  EXPECT_NEAR(g.tau(), (-1 - s5) / 2, 1e-14);
  EXPECT_NEAR(g.tau_prime(), (-1 + s5) / 2, 1e-14);
  EXPECT_NEAR(geodesic_period(5), 2 * std::log((3 + s5) / 2), 1e-12);
  EXPECT_NEAR(geodesic_period(12), 2 * std::log(2 + std::sqrt(3.0)), 1e-12);
  EXPECT_NEAR(geodesic_period(8), 2 * std::log(3 + 2 * std::sqrt(2.0)), 1e-12);
  EXPECT_NEAR(geodesic_period(5), 1.92485, 1e-5);
  EXPECT_NEAR(geodesic_period(12), 2.63392, 1e-5);
  EXPECT_NEAR(geodesic_period(8), 3.52549, 1e-5);
}

TEST(Geodesic, SamplesAreEquallySpaced) {
  GeodesicArc g({1, 1, -1}, geodesic_period(5));
  auto one = sample_geodesic(g, 1);
  EXPECT_NEAR(std::abs(one[0] - g.apex()), 0, 1e-15);
  for (i64 d : {5, 12, 8, 13, 21, 145}) {
    Order o = order_from_discriminant(d);
    GeodesicArc a = geodesic_from_embedding(embedding_from_form(principal_form(d), o.field, o.f));
    const int M = 50;
    auto pts = sample_geodesic(a, M, -0.5 * a.period());
    for (int k = 0; k + 1 < M; ++k)
      EXPECT_NEAR(hyperbolic_distance(pts[k], pts[k + 1]), a.period() / M, 1e-9);
    for (int k = 0; k < M; ++k) EXPECT_NEAR(a.coordinate(pts[k]), -0.5 * a.period() + k * a.period() / M, 1e-9);
  }
}

TEST(Automorph, TraceAndFixedPoint) {
  QuadField k5 = make_field(5), k3 = make_field(3);
  Embedding e5 = embedding_from_form({1, 1, -1}, k5, 1);
  Embedding e12 = embedding_from_form({1, 2, -2}, k3, 1);
  EXPECT_EQ(automorph(e5).trace(), 3);
  EXPECT_EQ(automorph(e12).trace(), 4);
  for (const Embedding& e : {e5, e12}) {
    BigMat A = automorph(e);
    EXPECT_EQ(A.det(), 1);
    GeodesicArc g = geodesic_from_embedding(e);
    double t = g.tau();
    double ft = (A.a.get_d() * t + A.b.get_d()) / (A.c.get_d() * t + A.d.get_d());
    EXPECT_NEAR(ft, t, 1e-12);
  }
}

TEST(Automorph, ClosesTheSampleSet) {
  for (i64 d = 5; d < 200; ++d) {
    if (d % 4 > 1 || is_square(d)) continue;
    Order o = order_from_discriminant(d);
    NarrowClassGroup G(d);
    for (const QForm& q : G.classes()) {
      Embedding e = embedding_from_form(q, o.field, o.f);
      GeodesicArc g = geodesic_from_embedding(e);
      if (g.period() > 12) continue;  // keep the direct parametrization well conditioned
      BigMat A = automorph(e);
      // L = 2 log of the largest eigenvalue
      double tr = A.trace().get_d();
      EXPECT_NEAR(g.period(), 2 * std::log((tr + std::sqrt(tr * tr - 4)) / 2), 1e-9) << d;
      const int M = 64;
      const double t0 = -0.5 * g.period();
      auto pts = sample_geodesic(g, M, t0);
      std::vector<double> image;
      for (const UHPoint& z : pts) {
        double c = g.coordinate(moebius_big(A, z));
        double r = std::fmod(c - t0, g.period());
        if (r < 0) r += g.period();
        if (g.period() - r < 1e-9) r -= g.period();
        image.push_back(r);
      }
      std::sort(image.begin(), image.end());
      for (int k = 0; k < M; ++k) EXPECT_NEAR(image[k], k * g.period() / M, 1e-9) << d << " " << q;
    }
  }
}

TEST(Walker, PeriodAndEquivalence) {
  for (i64 d = 5; d < 400; ++d) {
    if (d % 4 > 1 || is_square(d)) continue;
    NarrowClassGroup G(d);
    for (const QForm& q : G.classes()) {
      GeodesicWalker w(q);
      EXPECT_NEAR(w.period(), geodesic_period(d), 1e-9 * geodesic_period(d)) << d;
      GeodesicArc arc(q, w.period());
      for (double t = -3; t <= 3; t += 0.37) {
        FDReduction a = reduce_to_fundamental_domain(arc.at(t));
        FDReduction b = reduce_to_fundamental_domain(w.at(t).w);
        if (a.boundary || b.boundary) continue;
        EXPECT_LT(hyperbolic_distance(a.z, b.z), 1e-8) << d << " " << q << " t " << t;
      }
    }
  }
}

TEST(Walker, RejectsUnreducedForm) { EXPECT_THROW(GeodesicWalker({1, 5, 5}), MathError); }
