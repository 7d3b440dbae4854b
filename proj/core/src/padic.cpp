#include "shc/padic.hpp"

#include <algorithm>

#include "shc/errors.hpp"

namespace shc {

namespace {

mpz_class ppow(i64 p, long k) { return pow_mpz(p, static_cast<unsigned long>(k)); }

mpz_class modp(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

void PadicNumber::check() const {
  if (!zero_ && prec_ < kMinPrecision)
    throw PrecisionError("p-adic precision fell below the minimum");
}

PadicNumber PadicNumber::zero(i64 p, long abs_prec) {
  PadicNumber z;
  z.p_ = p;
  z.zero_ = true;
  z.v_ = abs_prec;
  return z;
}

PadicNumber PadicNumber::from_rational(const mpq_class& q, i64 p, long N) {
  if (N < 1) throw MathError("p-adic precision must be positive");
  if (q == 0) return zero(p, N);
  PadicNumber r;
  r.p_ = p;
  r.zero_ = false;
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class pp = p;
  long vn = static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t()));
  r.v_ = vn - vd;
  r.prec_ = N;
  mpz_class m = ppow(p, N);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  r.unit_ = modp(num * inv, m);
  return r;
}

mpz_class PadicNumber::mod_pk(long k) const {
  if (k <= 0) return 0;
  if (abs_prec() < k) throw PrecisionError("mod_pk: not enough digits");
  if (zero_) return 0;
  if (v_ < 0) throw MathError("mod_pk: negative valuation");
  if (v_ >= k) return 0;
  return modp(unit_ * ppow(p_, v_), ppow(p_, k));
}

mpq_class PadicNumber::truncate(long n) const {
  if (zero_) {
    if (v_ < n) throw PrecisionError("truncate: not enough digits");
    return 0;
  }
  if (v_ >= n) return 0;
  if (abs_prec() < n) throw PrecisionError("truncate: not enough digits");
  // digits of valuation v_ .. n-1
  mpz_class digits = modp(unit_, ppow(p_, n - v_));
  mpq_class out(digits);
  if (v_ >= 0)
    out *= mpq_class(ppow(p_, v_));
  else
    out /= mpq_class(ppow(p_, -v_));
  out.canonicalize();
  return out;
}

mpq_class PadicNumber::to_rational() const {
  if (zero_) return 0;
  return truncate(abs_prec());
}

PadicNumber PadicNumber::inverse() const {
  if (zero_) throw PrecisionError("inverse of a p-adic zero at this precision");
  PadicNumber r = *this;
  r.v_ = -v_;
  mpz_class m = ppow(p_, prec_);
  mpz_invert(r.unit_.get_mpz_t(), unit_.get_mpz_t(), m.get_mpz_t());
  return r;
}

PadicNumber operator-(const PadicNumber& a) {
  if (a.zero_) return a;
  PadicNumber r = a;
  mpz_class m = ppow(a.p_, a.prec_);
  r.unit_ = modp(-a.unit_, m);
  return r;
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw MathError("p-adic prime mismatch");
  const long A = std::min(a.abs_prec(), b.abs_prec());
  if (a.zero_ && b.zero_) return PadicNumber::zero(a.p_, A);
  long vmin = std::min(a.zero_ ? A : a.v_, b.zero_ ? A : b.v_);
  long N = A - vmin;
  if (N <= 0) return PadicNumber::zero(a.p_, A);
  mpz_class m = ppow(a.p_, N);
  mpz_class s = 0;
  if (!a.zero_ && a.v_ < A) s += a.unit_ * ppow(a.p_, a.v_ - vmin);
  if (!b.zero_ && b.v_ < A) s += b.unit_ * ppow(b.p_, b.v_ - vmin);
  s = modp(s, m);
  if (s == 0) return PadicNumber::zero(a.p_, A);
  PadicNumber r;
  r.p_ = a.p_;
  r.zero_ = false;
  mpz_class pp = a.p_;
  long w = static_cast<long>(mpz_remove(s.get_mpz_t(), s.get_mpz_t(), pp.get_mpz_t()));
  r.v_ = vmin + w;
  r.prec_ = N - w;
  r.unit_ = s;
  r.check();
  return r;
}

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw MathError("p-adic prime mismatch");
  // a zero operand's v_ is its absolute precision
  if (a.zero_ || b.zero_) return PadicNumber::zero(a.p_, a.v_ + b.v_);
  PadicNumber r;
  r.p_ = a.p_;
  r.zero_ = false;
  r.v_ = a.v_ + b.v_;
  r.prec_ = std::min(a.prec_, b.prec_);
  r.unit_ = modp(a.unit_ * b.unit_, ppow(a.p_, r.prec_));
  r.check();
  return r;
}

bool equal_at_precision(const PadicNumber& a, const PadicNumber& b) {
  PadicNumber d = a - b;
  return d.is_zero();
}

std::ostream& operator<<(std::ostream& os, const PadicNumber& x) {
  if (x.zero_) return os << "O(" << x.p_ << "^" << x.v_ << ")";
  return os << x.unit_ << "*" << x.p_ << "^" << x.v_ << " + O(" << x.p_ << "^"
            << x.abs_prec() << ")";
}

i64 least_nonresidue(i64 p) {
  if (p < 3 || !is_prime(p)) throw MathError("least_nonresidue: p must be an odd prime");
  for (i64 n = 2; n < p; ++n)
    if (kronecker(n, p) == -1) return n;
  throw InternalFault("no quadratic non-residue found");
}

Qp2Element::Qp2Element(PadicNumber x, PadicNumber y, i64 u)
    : x_(std::move(x)), y_(std::move(y)), u_(u) {
  if (x_.p() != y_.p()) throw MathError("Qp2Element: prime mismatch");
}

Qp2Element Qp2Element::alpha(i64 p, long N) {
  return {PadicNumber::zero(p, PadicNumber::kExact),
          PadicNumber::from_integer(1, p, N), least_nonresidue(p)};
}

Qp2Element Qp2Element::from_rational(const mpq_class& q, i64 p, long N) {
  PadicNumber x = q == 0 ? PadicNumber::zero(p, PadicNumber::kExact)
                         : PadicNumber::from_rational(q, p, N);
  return {x, PadicNumber::zero(p, PadicNumber::kExact), least_nonresidue(p)};
}

PadicNumber Qp2Element::norm() const {
  long N = std::max({x_.rel_prec(), y_.rel_prec(), 2L}) + 2;
  PadicNumber uu = PadicNumber::from_integer(u_, p(), N);
  return x_ * x_ - uu * y_ * y_;
}

Qp2Element Qp2Element::inverse() const {
  PadicNumber n = norm();
  PadicNumber ni = n.inverse();
  return {x_ * ni, -(y_ * ni), u_};
}

Qp2Element operator+(const Qp2Element& a, const Qp2Element& b) {
  return {a.x_ + b.x_, a.y_ + b.y_, a.u_};
}

Qp2Element operator-(const Qp2Element& a, const Qp2Element& b) {
  return {a.x_ - b.x_, a.y_ - b.y_, a.u_};
}

Qp2Element operator*(const Qp2Element& a, const Qp2Element& b) {
  if (a.u_ != b.u_) throw MathError("Qp2Element: different alpha");
  long N = std::max({a.x_.rel_prec(), a.y_.rel_prec(), b.x_.rel_prec(),
                     b.y_.rel_prec(), 2L}) + 2;
  PadicNumber uu = PadicNumber::from_integer(a.u_, a.p(), N);
  return {a.x_ * b.x_ + uu * a.y_ * b.y_, a.x_ * b.y_ + a.y_ * b.x_, a.u_};
}

std::ostream& operator<<(std::ostream& os, const Qp2Element& z) {
  return os << "[" << z.x_ << "] + [" << z.y_ << "]*alpha";
}

Qp2Element embed_sqrt_dK(const QuadField& k, i64 p, long N) {
  if (N < 2) throw MathError("embed_sqrt_dK: precision must be at least 2");
  if (p < 3 || !is_prime(p)) throw MathError("embed_sqrt_dK: p must be an odd prime");
  int kr = kronecker(k.dK, p);
  if (kr == 0) throw MathError("embed_sqrt_dK: p ramifies in K");
  if (kr == 1) throw MathError("embed_sqrt_dK: p splits in K");
  const i64 u = least_nonresidue(p);
  const mpz_class m = ppow(p, N);
  mpz_class uinv, uu = u;
  mpz_invert(uinv.get_mpz_t(), uu.get_mpz_t(), m.get_mpz_t());
  const mpz_class A = modp(mpz_class(static_cast<long>(k.dK)) * uinv, m);
  // least positive root mod p
  i64 c0 = 0;
  const i64 Ap = mpz_class(A % p).get_si();
  for (i64 c = 1; c < p; ++c)
    if (mul_mod(c, c, p) == Ap) {
      c0 = c;
      break;
    }
  if (c0 == 0) throw InternalFault("embed_sqrt_dK: no square root mod p");
  // Newton iteration c <- c - (c^2 - A) / (2c), doubling the digits
  mpz_class c = c0;
  for (long have = 1; have < N;) {
    have = std::min(2 * have, N);
    mpz_class mk = ppow(p, have);
    mpz_class inv, twoc = modp(2 * c, mk);
    mpz_invert(inv.get_mpz_t(), twoc.get_mpz_t(), mk.get_mpz_t());
    c = modp(c - (c * c - A) * inv, mk);
  }
  return {PadicNumber::zero(p, PadicNumber::kExact),
          PadicNumber::from_rational(mpq_class(c), p, N), u};
}

Qp2Element moebius_qp2(const RatMat& g, const Qp2Element& tau) {
  if (g.det() == 0) throw MathError("moebius_qp2: singular matrix");
  const i64 p = tau.p();
  long N = std::max(tau.x().rel_prec(), tau.y().rel_prec()) + 8;
  auto lift = [&](const mpq_class& q) {
    return Qp2Element::from_rational(q, p, N);
  };
  Qp2Element a = lift(g.a), b = lift(g.b), c = lift(g.c), d = lift(g.d);
  Qp2Element num = a * tau + b;
  Qp2Element den = c * tau + d;
  return num / den;
}

Fp2 fp2_mul(const Fp2& a, const Fp2& b, i64 p, i64 u) {
  i64 x = mod(mul_mod(a.x, b.x, p) + mul_mod(mul_mod(u, a.y, p), b.y, p), p);
  i64 y = mod(mul_mod(a.x, b.y, p) + mul_mod(a.y, b.x, p), p);
  return {x, y};
}

Fp2 fp2_inv(const Fp2& a, i64 p, i64 u) {
  i64 n = mod(mul_mod(a.x, a.x, p) - mul_mod(mul_mod(u, a.y, p), a.y, p), p);
  if (n == 0) throw MathError("fp2_inv: zero element");
  i64 ni = inv_mod(n, p);
  return {mul_mod(a.x, ni, p), mod(-mul_mod(a.y, ni, p), p)};
}

Fp2 fp2_moebius(const IntMat& g, const Fp2& z, i64 p, i64 u) {
  Fp2 num = fp2_mul({mod(g.a, p), 0}, z, p, u);
  num.x = mod(num.x + g.b, p);
  Fp2 den = fp2_mul({mod(g.c, p), 0}, z, p, u);
  den.x = mod(den.x + g.d, p);
  return fp2_mul(num, fp2_inv(den, p, u), p, u);
}

}  // namespace shc
