#include "shc/bruhat_tits.hpp"

#include <deque>
#include <map>
#include <sstream>

#include "shc/errors.hpp"

namespace shc {

namespace {

mpq_class canonical_center(i64 p, long n, const mpq_class& x) {
  if (x == 0) return 0;
  long vx = valuation(x, p);
  if (vx >= n) return 0;
  // x = m / p^k with p not dividing den/p^k part; keep digits below n
  long k = vx < 0 ? -vx : 0;
  mpz_class pk = pow_mpz(p, static_cast<unsigned long>(k));
  mpq_class scaled = x * mpq_class(pk);  // in Z_(p)
  mpz_class modulus = pow_mpz(p, static_cast<unsigned long>(n + k));
  mpz_class den = scaled.get_den(), inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
  mpz_class m = scaled.get_num() * inv;
  mpz_mod(m.get_mpz_t(), m.get_mpz_t(), modulus.get_mpz_t());
  mpq_class out(m, pk);
  out.canonicalize();
  return out;
}

long qval(const mpq_class& q, i64 p) { return valuation(q, p); }

}  // namespace

TreeVertex base_vertex(i64 p) { return {p, 0, 0}; }

TreeVertex make_vertex(i64 p, long n, const mpq_class& x) {
  if (!is_prime(p)) throw MathError("tree vertex: p must be prime");
  return {p, n, canonical_center(p, n, x)};
}

TreeVertex reduce_point(const Qp2Element& tau) {
  const i64 p = tau.p();
  if (tau.y().is_zero()) throw MathError("reduce_point: point lies in Q_p");
  long n = tau.y().valuation();
  if (tau.y().rel_prec() < 1) throw PrecisionError("reduce_point: no digits");
  mpq_class c = tau.x().truncate(n);
  return {p, n, c};
}

TreeVertex act_on_vertex(const RatMat& g, const TreeVertex& v) {
  if (g.det() == 0) throw MathError("act_on_vertex: singular matrix");
  const i64 p = v.p;
  mpq_class pn = v.n >= 0 ? mpq_class(pow_mpz(p, static_cast<unsigned long>(v.n)))
                          : mpq_class(1, pow_mpz(p, static_cast<unsigned long>(-v.n)));
  pn.canonicalize();
  RatMat h{pn, v.center, 0, 1};
  RatMat m = g * h;
  // right GL2(Z_p) column operations to make m upper triangular
  if (m.c != 0) {
    if (m.d == 0 || qval(m.c, p) < qval(m.d, p)) {
      std::swap(m.a, m.b);
      std::swap(m.c, m.d);
    }
    if (m.c != 0) {
      mpq_class r = m.c / m.d;  // in Z_(p)
      m.a -= r * m.b;
      m.c = 0;
    }
  }
  mpq_class ratio = m.a / m.d;
  long n = qval(ratio, p);
  return {p, n, canonical_center(p, n, m.b / m.d)};
}

RatMat navigate_to_base(const TreeVertex& v) {
  mpq_class pn = v.n >= 0 ? mpq_class(pow_mpz(v.p, static_cast<unsigned long>(v.n)))
                          : mpq_class(1, pow_mpz(v.p, static_cast<unsigned long>(-v.n)));
  pn.canonicalize();
  return {1, -v.center, 0, pn};
}

int residue_index(const Fp2& z, i64 p) {
  if (z.y == 0) throw MathError("residue_index: element lies in F_p");
  return static_cast<int>(z.x * (p - 1) + (z.y - 1));
}

Fp2 residue_from_index(int r, i64 p) {
  return {r / (p - 1), r % (p - 1) + 1};
}

int residue_class(const Qp2Element& tau) {
  const i64 p = tau.p();
  TreeVertex v = reduce_point(tau);
  if (!(v == base_vertex(p))) throw MathError("residue_class: point does not reduce to v0");
  i64 x = tau.x().mod_pk(1).get_si();
  i64 y = tau.y().mod_pk(1).get_si();
  return residue_index({x, y}, p);
}

std::vector<TreeVertex> neighborhood(i64 p, int R) {
  std::vector<TreeVertex> out{base_vertex(p)};
  std::vector<int> dist{0};
  std::vector<long> parent{-1};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (dist[i] >= R) continue;
    const TreeVertex v = out[i];
    std::vector<TreeVertex> nbrs;
    nbrs.push_back(make_vertex(p, v.n - 1, v.center));
    mpq_class step = v.n >= 0 ? mpq_class(pow_mpz(p, static_cast<unsigned long>(v.n)))
                              : mpq_class(1, pow_mpz(p, static_cast<unsigned long>(-v.n)));
    step.canonicalize();
    for (i64 d = 0; d < p; ++d)
      nbrs.push_back(make_vertex(p, v.n + 1, v.center + mpq_class(d) * step));
    for (const TreeVertex& w : nbrs) {
      if (parent[i] >= 0 && w == out[static_cast<std::size_t>(parent[i])]) continue;
      out.push_back(w);
      dist.push_back(dist[i] + 1);
      parent.push_back(static_cast<long>(i));
    }
  }
  return out;
}

std::string neighborhood_dot(i64 p, int R) {
  std::vector<TreeVertex> vs = neighborhood(p, R);
  std::ostringstream os;
  os << "graph bruhat_tits_p" << p << "_r" << R << " {\n";
  auto name = [](std::size_t i) { return "v" + std::to_string(i); };
  for (std::size_t i = 0; i < vs.size(); ++i)
    os << "  " << name(i) << " [label=\"" << vs[i].n << ":" << vs[i].center
       << "\", parity=" << vs[i].parity() << ", color="
       << (vs[i].parity() == 0 ? "black" : "red") << "];\n";
  // each non-base vertex is adjacent to exactly one earlier vertex
  for (std::size_t i = 1; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const TreeVertex &a = vs[i], &b = vs[j];
      bool adj = false;
      if (a.n == b.n + 1) adj = make_vertex(p, b.n, a.center) == b;
      if (b.n == a.n + 1) adj = make_vertex(p, a.n, b.center) == a;
      if (adj) {
        os << "  " << name(j) << " -- " << name(i) << ";\n";
        break;
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace shc
