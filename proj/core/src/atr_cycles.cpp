#include "shc/atr_cycles.hpp"

#include <cmath>

#include "shc/errors.hpp"

namespace shc {

namespace {

QuadElement fint(const BaseField& F, i64 n) { return QuadElement::integer(F.F.dK, n); }

QuadElement fhalf(const QuadElement& x) {
  return {x.dK(), x.x() / 2, x.y() / 2};
}

}  // namespace

BaseField make_base_field(i64 D) {
  if (D != 2 && D != 5 && D != 13)
    throw MathError("base field must be Q(sqrt D) with D in {2, 5, 13}");
  QuadField F = make_field(D);
  return {F, fundamental_unit(F)};
}

QuadElement zf(const BaseField& F, i64 a0, i64 a1) {
  return fint(F, a0) + QuadElement::integer(F.F.dK, a1) * QuadElement::omega(F.F);
}

double sigma0(const QuadElement& x) { return x.to_double(); }
double sigma1(const QuadElement& x) { return x.conj().to_double(); }
bool in_ZF(const QuadElement& x) { return x.is_integral(); }

bool sqrt_in_ZF(const QuadElement& a, QuadElement& root) {
  double s0 = sigma0(a), s1 = sigma1(a);
  if (s0 < 0 || s1 < 0) return false;
  double r0 = std::sqrt(s0), r1 = std::sqrt(s1);
  double sd = std::sqrt(static_cast<double>(a.dK()));
  for (int sgn1 : {1, -1}) {
    double v1 = sgn1 * r1;
    // X = (X1 + X2 sqrt d)/2 with sigma0 = (X1 + X2 sd)/2, sigma1 = (X1 - X2 sd)/2
    double X1 = r0 + v1;
    double X2 = (r0 - v1) / sd;
    QuadElement cand(a.dK(), mpq_class(mpz_class(static_cast<long>(std::llround(X1)))),
                     mpq_class(mpz_class(static_cast<long>(std::llround(X2)))));
    if (cand * cand == a && in_ZF(cand)) {
      root = cand;
      return true;
    }
  }
  return false;
}

bool is_atr(const BaseField& F, const QuadElement& delta) {
  if (delta.dK() != F.F.dK) throw MathError("is_atr: element of another field");
  QuadElement r;
  if (delta.norm() >= 0) {
    // a square in F has square norm; test exactly when possible
    if (sqrt_in_ZF(delta, r)) throw MathError("is_atr: delta is a square in F");
  }
  return sigma0(delta) < 0 && sigma1(delta) > 0;
}

ATRExtension make_atr_extension(const BaseField& F, const QuadElement& delta,
                                const QuadElement& f) {
  if (!in_ZF(delta) || !in_ZF(f) || f.norm() == 0)
    throw MathError("ATR extension needs delta, f in Z_F, f != 0");
  if (!is_atr(F, delta)) throw MathError("delta does not define an ATR extension");
  ATRExtension e{F, delta, delta, fint(F, 0), f};
  // w_K = (x + sqrt delta)/2 is integral iff (x^2 - delta)/4 in Z_F
  const QuadElement reps[4] = {zf(F, 0, 0), zf(F, 1, 0), zf(F, 0, 1), zf(F, 1, 1)};
  for (const QuadElement& x : reps) {
    QuadElement m = x * x - delta;
    QuadElement q(m.dK(), m.x() / 4, m.y() / 4);
    if (in_ZF(q)) {
      e.t = x;
      e.dK = delta;
      return e;
    }
  }
  e.t = fint(F, 0);
  e.dK = fint(F, 4) * delta;
  return e;
}

KElement k_mul(const ATRExtension& ext, const KElement& a, const KElement& b) {
  return {a.X * b.X + a.Y * b.Y * ext.dK, a.X * b.Y + a.Y * b.X};
}

QuadElement k_norm(const ATRExtension& ext, const KElement& a) {
  return a.X * a.X - a.Y * a.Y * ext.dK;
}

std::pair<double, double> k_sigma1(const ATRExtension& ext, const KElement& a) {
  double s = std::sqrt(sigma1(ext.dK));
  return {sigma1(a.X) + sigma1(a.Y) * s, sigma1(a.X) - sigma1(a.Y) * s};
}

FMat fmat_mul(const FMat& x, const FMat& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

bool fmat_equal(const FMat& x, const FMat& y) {
  return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

QuadElement RelForm::disc() const {
  return b * b - QuadElement::integer(a.dK(), 4) * a * c;
}

RelForm principal_rel_form(const ATRExtension& ext) {
  const i64 d = ext.F.F.dK;
  QuadElement ft = ext.f * ext.t;
  QuadElement m = ext.f * ext.f * (ext.t * ext.t - ext.dK);
  return {QuadElement::integer(d, 1), ft, QuadElement(d, m.x() / 4, m.y() / 4)};
}

ATRCycle atr_cycle_from_form(const RelForm& q, const ATRExtension& ext) {
  const i64 d = ext.F.F.dK;
  QuadElement D = q.disc();
  if (!(D == ext.f * ext.f * ext.dK))
    throw MathError("atr_cycle_from_form: discriminant is not f^2 dK");
  if (q.a.norm() == 0) throw MathError("atr_cycle_from_form: a = 0");
  if (!(sigma0(D) < 0 && sigma1(D) > 0))
    throw MathError("atr_cycle_from_form: discriminant sign pattern");
  ATRCycle c;
  c.q = q;
  QuadElement two = QuadElement::integer(d, 2);
  c.W = {q.b, two * q.c, -(two * q.a), -q.b};
  double a0 = sigma0(q.a), b0 = sigma0(q.b), D0 = sigma0(D);
  std::complex<double> root(-b0 / (2 * a0), std::sqrt(-D0) / (2 * std::abs(a0)));
  c.tau0 = root;
  double a1 = sigma1(q.a), b1 = sigma1(q.b), D1 = sigma1(D);
  double r1 = (-b1 - std::sqrt(D1)) / (2 * a1), r2 = (-b1 + std::sqrt(D1)) / (2 * a1);
  c.end_lo = std::min(r1, r2);
  c.end_hi = std::max(r1, r2);
  return c;
}

FMat psi(const ATRCycle& c, const ATRExtension& ext, const QuadElement& x,
         const QuadElement& y) {
  QuadElement ft = ext.f * ext.t;
  FMat fw{fhalf(ft + c.W.a), fhalf(c.W.b), fhalf(c.W.c), fhalf(ft + c.W.d)};
  return {x + y * fw.a, y * fw.b, y * fw.c, x + y * fw.d};
}

StabilizerUnit unit_stabilizer_search(const ATRExtension& ext, i64 bound) {
  const BaseField& F = ext.F;
  std::vector<QuadElement> etas;
  for (const QuadElement& e : {fint(F, 1), fint(F, -1), F.eps, -F.eps})
    if (sigma0(e) > 0 && sigma1(e) > 0) etas.push_back(e);
  // |sigma0(u)|^2 = sigma0(eta) bounds |sigma0(y f)| on the solutions
  const double d0 = -sigma0(ext.dK);
  const double f0 = std::abs(sigma0(ext.f));
  double eta_max = 0;
  for (const QuadElement& e : etas) eta_max = std::max(eta_max, sigma0(e));
  const double ymax0 = 2 * std::sqrt(eta_max / d0) / f0 + 1e-9;
  const double w0 = sigma0(QuadElement::omega(F.F));
  struct Sol {
    QuadElement x, y;
    KElement u;
    double rho;
  };
  std::vector<Sol> sols;
  for (i64 y1 = -bound; y1 <= bound; ++y1) {
    // sigma0(y) = y0 + y1 w0 in [-ymax0, ymax0]
    i64 lo = static_cast<i64>(std::ceil(-ymax0 - y1 * w0));
    i64 hi = static_cast<i64>(std::floor(ymax0 - y1 * w0));
    lo = std::max(lo, -bound);
    hi = std::min(hi, bound);
    for (i64 y0 = lo; y0 <= hi; ++y0) {
      if (y0 == 0 && y1 == 0) continue;
      QuadElement y = zf(F, y0, y1);
      QuadElement yf = y * ext.f;
      for (const QuadElement& eta : etas) {
        QuadElement n2 = yf * yf * ext.dK + fint(F, 4) * eta;
        QuadElement X;
        if (!sqrt_in_ZF(n2, X)) continue;
        for (const QuadElement& Xs : {X, -X}) {
          QuadElement x = fhalf(Xs - yf * ext.t);
          if (!in_ZF(x)) continue;
          KElement u{fhalf(Xs), fhalf(yf)};
          QuadElement ys = y;
          auto [up, um] = k_sigma1(ext, u);
          if (up < 0) {
            u = {-u.X, -u.Y};
            x = -x;
            ys = -ys;
            up = -up;
            um = -um;
          }
          if (!(um > 0)) continue;
          double rho = up / um;
          if (rho <= 1) continue;
          sols.push_back({x, ys, u, rho});
        }
      }
    }
  }
  if (sols.empty())
    throw BoundExhausted("unit_stabilizer_search: no relative unit with height <= " +
                         std::to_string(bound));
  std::size_t best = 0;
  for (std::size_t i = 1; i < sols.size(); ++i)
    if (sols[i].rho < sols[best].rho) best = i;
  StabilizerUnit out;
  out.x = sols[best].x;
  out.y = sols[best].y;
  out.u = sols[best].u;
  out.rho = sols[best].rho;
  out.box_solutions = sols.size();
  // every solution v should be in F^x u^k
  const double lr = std::log(out.rho);
  KElement uinv{out.u.X, -out.u.Y};  // conj(u) = N(u) u^{-1}, N(u) in F
  out.all_powers = true;
  for (const Sol& s : sols) {
    long k = std::lround(std::log(s.rho) / lr);
    if (k < 1 || std::abs(std::log(s.rho) / lr - static_cast<double>(k)) > 1e-6) {
      out.all_powers = false;
      continue;
    }
    KElement v = s.u;
    for (long i = 0; i < k; ++i) v = k_mul(ext, v, uinv);
    if (!(v.Y == fint(F, 0))) out.all_powers = false;
  }
  return out;
}

ATRDiscriminant atr_discriminant_norm(const ATRExtension& ext) {
  QuadElement m = ext.f * ext.f * ext.dK;
  mpq_class n = abs(m.norm());
  if (n.get_den() != 1) throw InternalFault("non-integral discriminant norm");
  return {n.get_num(), 16 * n.get_num()};
}

}  // namespace shc
