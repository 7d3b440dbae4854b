#include "shc/embeddings.hpp"

#include <deque>
#include <map>
#include <numeric>

#include "shc/errors.hpp"

namespace shc {

namespace {

// gcd(numerators) / lcm(denominators) over the non-zero entries.
mpq_class content(const std::vector<mpq_class>& v) {
  mpz_class g = 0, l = 1;
  for (const mpq_class& q : v) {
    if (q == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  }
  if (g == 0) throw MathError("content of the zero vector");
  mpq_class c(abs(g), l);
  c.canonicalize();
  return c;
}

// q == 1 for S = {inf}; q a power of p (any integer exponent) otherwise.
bool is_S_unit(const mpq_class& q, i64 p) {
  if (q <= 0) return false;
  if (p == 0) return q == 1;
  mpz_class n = q.get_num(), d = q.get_den();
  mpz_class pp = p;
  mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
  mpz_remove(d.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
  return n == 1 && d == 1;
}

mpq_class q_of(i64 x) { return mpq_class(mpz_class(static_cast<long>(x))); }

// Leading coefficient positive, same class.
QForm positive_equivalent(const QForm& q) {
  if (q.a > 0) return q;
  for (const QForm& f : rho_cycle(canonical_form(q)))
    if (f.a > 0) return f;
  throw InternalFault("no positive leading form in cycle");
}

}  // namespace

RatMat Embedding::image(const QuadElement& x) const {
  if (x.dK() != field.dK) throw MathError("image: field mismatch");
  RatMat w = to_rat(W);
  mpq_class fx = q_of(f);
  mpq_class s = x.y() / (2 * fx);
  mpq_class h = x.x() / 2;
  return {h + s * w.a, s * w.b, s * w.c, h + s * w.d};
}

RatMat Embedding::image_f_omega() const {
  mpq_class ft = q_of(f * field.t);
  RatMat w = to_rat(W);
  return {(ft + w.a) / 2, w.b / 2, w.c / 2, (ft + w.d) / 2};
}

Embedding embedding_from_form(const QForm& q, const QuadField& k, i64 f) {
  if (q.disc() != f * f * k.dK)
    throw MathError("embedding_from_form: discriminant mismatch");
  return {k, f, IntMat{q.b, 2 * q.c, -2 * q.a, -q.b}};
}

QForm form_of(const IntMat& W) {
  if (W.a + W.d != 0) throw MathError("form_of: W must have trace zero");
  if (W.b % 2 != 0 || W.c % 2 != 0)
    throw MathError("form_of: W needs even off-diagonal entries");
  return {-W.c / 2, W.a, W.b / 2};
}

Embedding conjugate(const IntMat& g, const Embedding& e) {
  i64 det = g.det();
  if (det == 0) throw MathError("conjugate: singular matrix");
  IntMat m = g * e.W * adjugate(g);
  if (m.a % det || m.b % det || m.c % det || m.d % det)
    throw MathError("conjugate: result not integral");
  return {e.field, e.f, {m.a / det, m.b / det, m.c / det, m.d / det}};
}

mpq_class embedding_conductor(const Embedding& e) {
  // Q = {P12, P21, P11 - P22} for P = psi(w_K); generator lcm(den)/gcd(num)
  mpq_class two_f = q_of(2 * e.f);
  std::vector<mpq_class> q{q_of(e.W.b) / two_f, q_of(e.W.c) / two_f,
                           q_of(e.W.a) / q_of(e.f)};
  mpq_class c = content(q);
  return 1 / c;
}

OptimalityVerdict is_optimal(const Embedding& e, const Order& order, SSet S) {
  if (!(e.field == order.field)) throw MathError("is_optimal: field mismatch");
  if (e.W.a + e.W.d != 0 ||
      static_cast<i128>(e.W.a) * e.W.a + static_cast<i128>(e.W.b) * e.W.c !=
          static_cast<i128>(e.disc()))
    throw MathError("is_optimal: W^2 != f^2 dK I");
  if (S.p != 0 && !is_prime(S.p)) throw MathError("is_optimal: p must be prime");
  const i64 p = S.p;
  const mpq_class g = q_of(order.f);
  OptimalityVerdict v;
  // (1) psi(K) cap R[1/S] = psi(O_g[1/S])
  v.c1 = is_S_unit(embedding_conductor(e) / g, p);
  // (2) psi(g w_K) = g (f t I + W) / (2f) primitive in R
  const mpq_class D = q_of(2 * e.f);
  const i64 ft = e.f * e.field.t;
  std::vector<mpq_class> m2{g * q_of(ft + e.W.a) / D, g * q_of(e.W.b) / D,
                            g * q_of(e.W.c) / D, g * q_of(ft + e.W.d) / D};
  v.c2 = is_S_unit(content(m2), p);
  // (3) psi(g w_{K,0}) = g W / f primitive in R^T = {[[x, 2y], [2z, -x]]}
  std::vector<mpq_class> m3{g * q_of(e.W.a) / q_of(e.f), g * q_of(e.W.b) / D,
                            g * q_of(e.W.c) / D};
  v.c3 = is_S_unit(content(m3), p);
  if (v.c1 != v.c2 || v.c2 != v.c3)
    throw InternalFault("optimality criteria disagree");
  v.optimal = v.c1;
  return v;
}

Embedding star_action(const QForm& t, const Embedding& e) {
  QForm qe = form_of(e);
  if (t.disc() != qe.disc()) throw MathError("star_action: discriminant mismatch");
  QForm prod = compose(positive_equivalent(t), positive_equivalent(qe));
  return embedding_from_form(canonical_form(prod), e.field, e.f);
}

BruteForceClasses enumerate_classes_bruteforce(i64 disc, i64 bound,
                                               int word_length) {
  Order o = order_from_discriminant(disc);
  // every class has a reduced form, whose W has entries below 2 sqrt(disc)
  if (static_cast<i128>(bound) * bound < 4 * static_cast<i128>(disc))
    throw BoundExhausted("enumerate_classes_bruteforce: bound below 2 sqrt(disc)");
  std::vector<IntMat> found;
  std::map<std::array<i64, 3>, std::size_t> where;
  BruteForceClasses out;
  for (i64 x = -bound; x <= bound; ++x) {
    const i64 n = disc - x * x;
    for (i64 y = -bound; y <= bound; ++y) {
      if (y == 0 || n % y != 0) continue;
      const i64 z = n / y;
      if (z < -bound || z > bound) continue;
      Embedding e{o.field, o.f, {x, y, z, -x}};
      if (!is_optimal(e, o).optimal) continue;
      where[{x, y, z}] = found.size();
      found.push_back(e.W);
      out.classes.insert(canonical_form(form_of(e.W)));
    }
  }
  out.embeddings = found.size();
  // certificate: connect W's by conjugation with S, T, T^{-1} inside the box
  const IntMat gens[3] = {{0, -1, 1, 0}, {1, 1, 0, 1}, {1, -1, 0, 1}};
  std::vector<int> comp(found.size(), -1);
  int ncomp = 0;
  for (std::size_t s = 0; s < found.size(); ++s) {
    if (comp[s] != -1) continue;
    QForm cls = canonical_form(form_of(found[s]));
    std::deque<std::pair<std::size_t, int>> queue{{s, 0}};
    comp[s] = ncomp;
    while (!queue.empty()) {
      auto [i, depth] = queue.front();
      queue.pop_front();
      if (!(canonical_form(form_of(found[i])) == cls)) out.certificate_sound = false;
      if (depth >= word_length) continue;
      for (const IntMat& g : gens) {
        IntMat m = g * found[i] * adjugate(g);
        auto it = where.find({m.a, m.b, m.c});
        if (it == where.end() || comp[it->second] != -1) continue;
        comp[it->second] = ncomp;
        queue.push_back({it->second, depth + 1});
      }
    }
    ++ncomp;
  }
  out.certificate_components = static_cast<std::size_t>(ncomp);
  return out;
}

}  // namespace shc
