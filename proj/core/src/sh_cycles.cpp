#include "shc/sh_cycles.hpp"

#include <cmath>

#include "shc/errors.hpp"

namespace shc {

namespace {

mpq_class q_of(i64 x) { return mpq_class(mpz_class(static_cast<long>(x))); }

template <class F>
auto with_precision_retry(long N, F&& fn) {
  for (int attempt = 0;; ++attempt) {
    try {
      return fn(N);
    } catch (const PrecisionError&) {
      if (attempt >= 3) throw;
      N *= 2;
    }
  }
}

}  // namespace

Qp2Element tau_p_of(const Embedding& e, i64 p, long N) {
  QForm q = form_of(e);
  Qp2Element s = embed_sqrt_dK(e.field, p, N);
  Qp2Element two_a = Qp2Element::from_rational(q_of(2 * q.a), p, N);
  Qp2Element minus_b = Qp2Element::from_rational(q_of(-q.b), p, N);
  Qp2Element fs = Qp2Element::from_rational(q_of(e.f), p, N) * s;
  return (minus_b - fs) / two_a;
}

std::vector<SHCycle> build_cycles(const QuadField& k, i64 f, i64 p, long precision) {
  if (p == 2) throw MathError("build_cycles: p must be odd");
  Order o = make_order(k, f);
  NarrowClassGroup G = picard_S(o, p);
  const i64 disc = o.discriminant();
  const double L = geodesic_period(disc);
  Embedding base = embedding_from_form(G.classes()[G.identity()], k, f);
  std::vector<SHCycle> out;
  for (std::size_t t = 0; t < G.order(); ++t) {
    Embedding e = star_action(G.classes()[t], base);
    SHCycle c{G.class_of(form_of(e)), e, p,
              with_precision_retry(precision, [&](long N) { return tau_p_of(e, p, N); }),
              GeodesicArc(form_of(e), L), disc_p(disc, p)};
    out.push_back(std::move(c));
  }
  return out;
}

void for_each_canonical_point(const SHCycle& c, std::size_t M,
                              const std::function<void(const CyclePoint&)>& out,
                              const CanonicalOptions& opt) {
  if (M < 1) throw MathError("canonical_points: M must be positive");
  const i64 p = c.p;
  const RatMat& h = opt.perturbation;
  if (!(h.det() > 0)) throw MathError("canonical_points: perturbation needs det > 0");
  // navigate the p-adic coordinate to the base vertex
  Qp2Element tau_h = moebius_qp2(h, c.tau_p);
  RatMat G = navigate_to_base(reduce_point(tau_h)) * h;
  Qp2Element tau_nav = moebius_qp2(G, c.tau_p);
  // conjugated embedding: integral with the same discriminant
  RatMat Wn = G * to_rat(c.embedding.W) * inverse(G);
  for (const mpq_class* x : {&Wn.a, &Wn.b, &Wn.c, &Wn.d})
    if (x->get_den() != 1) throw InternalFault("navigated embedding is not integral");
  IntMat Wi{Wn.a.get_num().get_si(), Wn.b.get_num().get_si(),
            Wn.c.get_num().get_si(), Wn.d.get_num().get_si()};
  QForm qn = form_of(Wi);
  if (qn.disc() != c.embedding.disc() || !qn.is_primitive())
    throw InternalFault("navigated form lost primitivity");
  const double off1 = transport_shift(c.geodesic.form(), G);
  Reduction red = reduce_form(qn);
  const double off2 = transport_shift(qn, to_rat(red.m));
  Qp2Element tau_r = moebius_qp2(to_rat(red.m), tau_nav);
  if (!(reduce_point(tau_r) == base_vertex(p)))
    throw InternalFault("reduced cycle left the base vertex");
  const Fp2 tau_bar{tau_r.x().mod_pk(1).get_si(), tau_r.y().mod_pk(1).get_si()};
  const i64 u = tau_r.u();

  GeodesicWalker walker(red.form, p);
  const double L = c.geodesic.period();
  if (std::abs(walker.period() - L) > 1e-7 * std::max(1.0, L))
    throw InternalFault("walker period disagrees with 2 log eps+");
  for (std::size_t k = 0; k < M; ++k) {
    double t = opt.t0 + static_cast<double>(k) * L / static_cast<double>(M);
    GeodesicWalker::Point wp = walker.at(t + off1 + off2);
    FDReduction fd = reduce_to_fundamental_domain(wp.w);
    // tau transforms by delta_w G_j^{-1}
    IntMat g = mul_mod(mod_mat(fd.gamma, p), adjugate(wp.to_start_mod), p);
    Fp2 r = fp2_moebius(mod_mat(g, p), tau_bar, p, u);
    out(CyclePoint{k, fd.z, residue_index(r, p), fd.boundary});
  }
}

std::vector<CyclePoint> canonical_points(const SHCycle& c, std::size_t M,
                                         const CanonicalOptions& opt) {
  std::vector<CyclePoint> pts;
  pts.reserve(M);
  for_each_canonical_point(c, M, [&](const CyclePoint& pt) { pts.push_back(pt); }, opt);
  return pts;
}

mpz_class toral_discriminant(int degree, const mpz_class& abs_norm) {
  return pow_mpz(4, static_cast<unsigned long>(degree)) * abs(abs_norm);
}

mpz_class toral_discriminant(const QuadField& k, i64 f) {
  return toral_discriminant(1, mpz_class(static_cast<long>(f * f * k.dK)));
}

i64 disc_p(i64 disc, i64 p) { return prime_to_p_part(disc, p); }

}  // namespace shc
