#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "shc/bruhat_tits.hpp"
#include "shc/errors.hpp"

using namespace shc;

namespace {

Qp2Element point(i64 p, const mpq_class& x, const mpq_class& y, long N = 40) {
  return Qp2Element::from_rational(x, p, N) +
         Qp2Element::from_rational(y, p, N) * Qp2Element::alpha(p, N);
}

mpq_class random_p_rational(std::mt19937_64& rng, i64 p, long lo, long hi) {
  std::uniform_int_distribution<long> num(-30, 30), k(lo, hi);
  mpq_class q(num(rng));
  q *= pow_mpq(p, k(rng));
  q.canonicalize();
  return q;
}

}  // namespace

TEST(Tree, ReducePointExamples) {
  TreeVertex v = reduce_point(Qp2Element::alpha(3, 40));
  EXPECT_EQ(v, base_vertex(3));
  EXPECT_EQ(v.parity(), 0);
  v = reduce_point(point(3, 2, 3));
  EXPECT_EQ(v.n, 1);
  EXPECT_EQ(v.center, 2);
  EXPECT_EQ(v.parity(), 1);
  v = reduce_point(point(3, 0, mpq_class(1, 3)));
  EXPECT_EQ(v.n, -1);
  EXPECT_EQ(v.center, 0);
  EXPECT_EQ(v.parity(), 1);
}

TEST(Tree, VertexEquality) {
  EXPECT_EQ(make_vertex(3, 2, 4), make_vertex(3, 2, 13));
  EXPECT_FALSE(make_vertex(3, 2, 4) == make_vertex(3, 2, 5));
  EXPECT_FALSE(make_vertex(3, 1, 1) == make_vertex(3, 2, 1));
  EXPECT_EQ(make_vertex(3, -1, mpq_class(5)), make_vertex(3, -1, 0));
}

TEST(Tree, ActionExamples) {
  const i64 p = 3;
  TreeVertex v0 = base_vertex(p);
  EXPECT_EQ(act_on_vertex(RatMat::identity(), v0), v0);
  EXPECT_EQ(act_on_vertex(RatMat{1, 0, 0, 3}, v0), reduce_point(point(p, 0, mpq_class(1, 3))));
  EXPECT_EQ(act_on_vertex(RatMat{1, 0, 0, 3}, v0), make_vertex(p, -1, 0));
  for (long n = -2; n <= 3; ++n)
    for (long a = -4; a <= 4; ++a) {
      TreeVertex v = make_vertex(p, n, mpq_class(2, 9));
      EXPECT_EQ(act_on_vertex(RatMat{1, a, 0, 1}, v), make_vertex(p, n, mpq_class(2, 9) + a));
    }
}

TEST(Tree, NavigatorExamples) {
  const i64 p = 3;
  EXPECT_EQ(navigate_to_base(base_vertex(p)), RatMat::identity());
  EXPECT_EQ(navigate_to_base(make_vertex(p, 2, 0)), (RatMat{1, 0, 0, 9}));
  EXPECT_EQ(navigate_to_base(make_vertex(p, 0, mpq_class(1, 3))), (RatMat{1, mpq_class(-1, 3), 0, 1}));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 500; ++i) {
    mpq_class y = random_p_rational(rng, p, -3, 3);
    if (y == 0) continue;
    Qp2Element tau = point(p, random_p_rational(rng, p, -3, 3), y);
    TreeVertex v = reduce_point(tau);
    EXPECT_EQ(reduce_point(moebius_qp2(navigate_to_base(v), tau)), base_vertex(p));
    EXPECT_EQ(act_on_vertex(navigate_to_base(v), v), base_vertex(p));
  }
}

TEST(Tree, Equivariance) {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (i64 p : {3, 5, 7}) {
    for (int i = 0; checked < 10000 && i < 3400; ++i) {
      RatMat g{random_p_rational(rng, p, -2, 2), random_p_rational(rng, p, -2, 2),
               random_p_rational(rng, p, -2, 2), random_p_rational(rng, p, -2, 2)};
      if (g.det() == 0) continue;
      mpq_class y = random_p_rational(rng, p, -3, 3);
      if (y == 0) continue;
      Qp2Element tau = point(p, random_p_rational(rng, p, -3, 3), y);
      EXPECT_EQ(reduce_point(moebius_qp2(g, tau)), act_on_vertex(g, reduce_point(tau)))
          << "p " << p << " g " << g << " tau " << tau;
      ++checked;
    }
  }
  EXPECT_GE(checked, 9000);
}

TEST(Tree, ResidueExamples) {
  EXPECT_EQ(residue_class_count(3), 6);
  Fp2 a = residue_from_index(residue_class(Qp2Element::alpha(3, 40)), 3);
  EXPECT_EQ(a, (Fp2{0, 1}));
  Qp2Element t = point(3, mpq_class(1 + 9 * 5), mpq_class(2 + 3 * 7));
  EXPECT_EQ(residue_from_index(residue_class(t), 3), (Fp2{1, 2}));
  EXPECT_THROW(residue_class(point(3, 0, 3)), MathError);
  for (i64 p : {3, 5, 7, 11})
    for (int r = 0; r < residue_class_count(p); ++r)
      EXPECT_EQ(residue_index(residue_from_index(r, p), p), r);
}

TEST(Tree, NeighborhoodShape) {
  for (i64 p : {2, 3, 5})
    for (int R = 0; R <= 3; ++R) {
      auto vs = neighborhood(p, R);
      i64 want = 1, shell = p + 1;
      for (int r = 1; r <= R; ++r, shell *= p) want += shell;
      EXPECT_EQ(static_cast<i64>(vs.size()), want);
      std::string dot = neighborhood_dot(p, R);
      std::size_t edges = 0, pos = 0;
      while ((pos = dot.find(" -- ", pos)) != std::string::npos) ++edges, ++pos;
      EXPECT_EQ(edges + 1, vs.size());
      EXPECT_EQ(dot.rfind("graph ", 0), 0u);
    }
}
