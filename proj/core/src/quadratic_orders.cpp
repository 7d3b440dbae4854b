#include "shc/quadratic_orders.hpp"

#include <cmath>

#include "shc/errors.hpp"

namespace shc {

QuadField make_field(i64 D) {
  if (D <= 1) throw MathError("make_field: D must exceed 1");
  if (!is_squarefree(D)) throw MathError("make_field: D must be squarefree");
  QuadField k;
  k.D = D;
  if (mod(D, 4) == 1) {
    k.dK = D;
    k.t = 1;
  } else {
    k.dK = 4 * D;
    k.t = 0;
  }
  return k;
}

QuadField field_from_discriminant(i64 dK) {
  if (!is_fundamental_discriminant(dK) || dK <= 0)
    throw MathError("not a positive fundamental discriminant: " +
                    std::to_string(dK));
  return make_field(mod(dK, 4) == 1 ? dK : dK / 4);
}

QuadElement::QuadElement(i64 dK, mpq_class x, mpq_class y)
    : dK_(dK), x_(std::move(x)), y_(std::move(y)) {
  x_.canonicalize();
  y_.canonicalize();
}

QuadElement QuadElement::integer(i64 dK, i64 n) {
  return {dK, mpq_class(mpz_class(static_cast<long>(2 * n))), mpq_class(0)};
}

QuadElement QuadElement::omega(const QuadField& k) {
  return {k.dK, mpq_class(k.t), mpq_class(1)};
}

QuadElement QuadElement::omega0(const QuadField& k) {
  return {k.dK, mpq_class(0), mpq_class(2)};
}

mpq_class QuadElement::norm() const {
  return (x_ * x_ - y_ * y_ * mpq_class(mpz_class(static_cast<long>(dK_)))) /
         4;
}

bool QuadElement::is_integral() const {
  if (x_.get_den() != 1 || y_.get_den() != 1) return false;
  mpz_class diff = x_.get_num() - y_.get_num() * (dK_ % 2);
  return mpz_even_p(diff.get_mpz_t()) != 0;
}

bool QuadElement::in_order(const QuadField& k, i64 f) const {
  if (x_.get_den() != 1 || y_.get_den() != 1) return false;
  const mpz_class& X = x_.get_num();
  const mpz_class& Y = y_.get_num();
  if (!mpz_divisible_ui_p(Y.get_mpz_t(), static_cast<unsigned long>(f)))
    return false;
  mpz_class diff = X - Y * k.t;
  return mpz_even_p(diff.get_mpz_t()) != 0;
}

double QuadElement::to_double() const {
  return (x_.get_d() + y_.get_d() * std::sqrt(static_cast<double>(dK_))) / 2;
}

int QuadElement::sign() const {
  // sign of x + y sqrt(dK)
  int sx = sgn(x_), sy = sgn(y_);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sx == 0 ? sy : sx;
  // opposite signs: compare x^2 with y^2 dK
  mpq_class lhs = x_ * x_;
  mpq_class rhs = y_ * y_ * mpq_class(mpz_class(static_cast<long>(dK_)));
  int c = cmp(lhs, rhs);
  return c > 0 ? sx : (c < 0 ? sy : 0);
}

namespace {

double log_abs_q(const mpq_class& q) {
  mpz_class n = abs(q.get_num());
  return log_mpz(n) - log_mpz(q.get_den());
}

}  // namespace

double QuadElement::log_abs() const {
  int s = sign();
  if (s == 0) throw MathError("log of zero");
  // x and y sqrt dK of the same sign: no cancellation, sum the logs.
  if (sgn(x_) * sgn(y_) >= 0) {
    double lx = x_ != 0 ? log_abs_q(x_) : -1e300;
    double ly = y_ != 0 ? log_abs_q(y_) + 0.5 * std::log(static_cast<double>(dK_))
                        : -1e300;
    double m = std::max(lx, ly);
    return m + std::log(std::exp(lx - m) + std::exp(ly - m)) - std::log(2.0);
  }
  // opposite signs: |v| = |N(v)| / |conj v|, and conj v has no cancellation
  mpq_class n = abs(norm());
  return log_abs_q(n) - conj().log_abs();
}

QuadElement operator+(const QuadElement& a, const QuadElement& b) {
  return {a.dK_, a.x_ + b.x_, a.y_ + b.y_};
}

QuadElement operator-(const QuadElement& a, const QuadElement& b) {
  return {a.dK_, a.x_ - b.x_, a.y_ - b.y_};
}

QuadElement operator*(const QuadElement& a, const QuadElement& b) {
  if (a.dK_ != b.dK_) throw MathError("QuadElement: field mismatch");
  mpq_class d(mpz_class(static_cast<long>(a.dK_)));
  // (x1 + y1 s)(x2 + y2 s)/4 = ((x1x2 + y1y2 d)/2 + (x1y2 + x2y1)/2 s)/2
  return {a.dK_, (a.x_ * b.x_ + a.y_ * b.y_ * d) / 2,
          (a.x_ * b.y_ + a.y_ * b.x_) / 2};
}

QuadElement QuadElement::pow(unsigned n) const {
  QuadElement r = integer(dK_, 1);
  QuadElement base = *this;
  while (n > 0) {
    if (n & 1u) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

std::ostream& operator<<(std::ostream& os, const QuadElement& e) {
  return os << "(" << e.x_ << " + " << e.y_ << "*sqrt(" << e.dK_ << "))/2";
}

bool Order::contained_in(const Order& other) const {
  return field == other.field && f % other.f == 0;
}

Order make_order(const QuadField& k, i64 f) {
  if (f < 1) throw MathError("conductor must be positive");
  return {k, f};
}

Order order_from_discriminant(i64 disc) {
  if (disc <= 0 || is_square(disc) || (mod(disc, 4) != 0 && mod(disc, 4) != 1))
    throw MathError("not a real quadratic discriminant: " +
                    std::to_string(disc));
  // largest f with disc/f^2 a discriminant
  for (i64 f = isqrt(disc); f >= 1; --f) {
    if (disc % (f * f) != 0) continue;
    i64 d = disc / (f * f);
    if (is_fundamental_discriminant(d)) return {field_from_discriminant(d), f};
  }
  throw MathError("no fundamental discriminant divides " +
                  std::to_string(disc));
}

TraceZeroSplit trace_zero_decomposition(const QuadElement& x) {
  // x = (X + Y sqrt d)/2  ->  a = X, y = Y sqrt d = (0 + 2Y sqrt d)/2
  return {x.x(), QuadElement(x.dK(), mpq_class(0), 2 * x.y())};
}

OrderUnit pell_search(i64 disc, int norm, i64 height_bound) {
  if (norm != 1 && norm != -1) throw MathError("pell_search: norm must be +-1");
  for (i64 U = 1; U <= height_bound; ++U) {
    i128 t2 = static_cast<i128>(disc) * U * U + 4 * norm;
    if (t2 <= 0 || t2 > static_cast<i128>(INT64_MAX)) continue;
    i64 T2 = static_cast<i64>(t2);
    if (!is_square(T2)) continue;
    i64 T = isqrt(T2);
    return {mpz_class(static_cast<long>(T)), mpz_class(static_cast<long>(U)),
            norm};
  }
  throw BoundExhausted("pell_search: no unit with U <= " +
                       std::to_string(height_bound) + " for disc " +
                       std::to_string(disc));
}

OrderUnit order_fundamental_unit(i64 disc, i64 max_period) {
  if (disc <= 0 || is_square(disc) || (mod(disc, 4) != 0 && mod(disc, 4) != 1))
    throw MathError("order_fundamental_unit: bad discriminant");
  const i64 r = isqrt(disc);
  // theta = (b + sqrt disc)/2 is reduced: theta > 1, -1 < theta' < 0.
  const i64 b = (mod(r, 2) == mod(disc, 2)) ? r : r - 1;
  const i64 P0 = b, Q0 = 2;
  i64 P = P0, Q = Q0;
  // convergent denominators q_{k-1}, q_{k-2}
  mpz_class q1 = 0, q2 = 1;
  for (i64 k = 1; k <= max_period; ++k) {
    i64 a = (P + r) / Q;
    mpz_class qn = a * q1 + q2;
    q2 = q1;
    q1 = qn;
    i64 Pn = a * Q - P;
    i64 Qn = (disc - Pn * Pn) / Q;
    P = Pn;
    Q = Qn;
    if (P == P0 && Q == Q0) {
      // eps = q_{l-1} theta + q_{l-2}
      OrderUnit u;
      u.U = q1;
      u.T = q1 * b + 2 * q2;
      u.norm = (k % 2 == 0) ? 1 : -1;
      return u;
    }
  }
  try {
    return pell_search(disc, -1);
  } catch (const BoundExhausted&) {
    return pell_search(disc, 1);
  }
}

namespace {

QuadElement as_element(const QuadField& k, i64 disc, const OrderUnit& u) {
  i64 f = isqrt(disc / k.dK);
  return {k.dK, mpq_class(u.T), mpq_class(u.U * f)};
}

}  // namespace

QuadElement fundamental_unit(const QuadField& k) {
  return as_element(k, k.dK, order_fundamental_unit(k.dK));
}

QuadElement totally_positive_fundamental_unit(const Order& o) {
  const i64 disc = o.discriminant();
  OrderUnit u = order_fundamental_unit(disc);
  QuadElement e = as_element(o.field, disc, u);
  if (u.norm == -1) e = e * e;
  return e;
}

}  // namespace shc
