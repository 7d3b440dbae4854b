#include "shc/arith.hpp"

#include <cmath>
#include <cstdlib>

#include "shc/errors.hpp"

namespace shc {

i64 gcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    i64 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

i64 gcd(i64 a, i64 b, i64 c) { return gcd(gcd(a, b), c); }

ExtGcd ext_gcd(i64 a, i64 b) {
  i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

i64 isqrt(i64 n) {
  if (n < 0) throw MathError("isqrt of negative number");
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(i64 n) {
  if (n < 0) return false;
  i64 r = isqrt(n);
  return r * r == n;
}

bool is_squarefree(i64 n) {
  n = n < 0 ? -n : n;
  if (n == 0) return false;
  for (i64 q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      n /= q;
      if (n % q == 0) return false;
    }
  }
  return true;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

bool is_fundamental_discriminant(i64 d) {
  if (d == 1 || d == 0) return false;
  i64 r = mod(d, 4);
  if (r == 1) return is_squarefree(d);
  if (r != 0) return false;
  i64 m = d / 4;
  i64 rm = mod(m, 4);
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mul_mod(i64 a, i64 b, i64 m) {
  return static_cast<i64>(
      (static_cast<i128>(mod(a, m)) * static_cast<i128>(mod(b, m))) % m);
}

i64 inv_mod(i64 a, i64 m) {
  ExtGcd e = ext_gcd(mod(a, m), m);
  if (e.g != 1) throw MathError("inv_mod: not invertible");
  return mod(e.x, m);
}

int kronecker(i64 d, i64 n) {
  if (n <= 0) throw MathError("kronecker: n must be positive");
  int result = 1;
  // Strip factors of two from n using (d|2).
  while (n % 2 == 0) {
    n /= 2;
    if (d % 2 == 0) return 0;
    i64 r = mod(d, 8);
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (d | n) for odd n.
  i64 a = mod(d, n);
  i64 m = n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

int valuation(const mpz_class& n, i64 p) {
  if (n == 0) throw MathError("valuation of zero");
  mpz_class q = n;
  mpz_class pp = p;
  int v = 0;
  while (mpz_divisible_p(q.get_mpz_t(), pp.get_mpz_t())) {
    q /= pp;
    ++v;
  }
  return v;
}

int valuation(const mpq_class& q, i64 p) {
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

i64 prime_to_p_part(i64 n, i64 p) {
  n = n < 0 ? -n : n;
  if (n == 0) return 0;
  while (n % p == 0) n /= p;
  return n;
}

bool is_power_of(const mpz_class& n, i64 p) {
  if (n <= 0) return false;
  mpz_class q = n;
  while (q % p == 0) q /= p;
  return q == 1;
}

mpz_class pow_mpz(i64 base, unsigned long e) {
  mpz_class r;
  mpz_class b = base;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

mpq_class pow_mpq(i64 base, long e) {
  if (e >= 0) return mpq_class(pow_mpz(base, static_cast<unsigned long>(e)));
  mpq_class r(mpz_class(1), pow_mpz(base, static_cast<unsigned long>(-e)));
  r.canonicalize();
  return r;
}

double log_mpz(const mpz_class& n) {
  if (n <= 0) throw MathError("log of non-positive integer");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

RatMat to_rat(const IntMat& m) {
  return {mpq_class(mpz_class(static_cast<long>(m.a))),
          mpq_class(mpz_class(static_cast<long>(m.b))),
          mpq_class(mpz_class(static_cast<long>(m.c))),
          mpq_class(mpz_class(static_cast<long>(m.d)))};
}

RatMat to_rat(const BigMat& m) {
  return {mpq_class(m.a), mpq_class(m.b), mpq_class(m.c), mpq_class(m.d)};
}

RatMat inverse(const RatMat& m) {
  mpq_class det = m.det();
  if (det == 0) throw MathError("singular matrix");
  return {m.d / det, -m.b / det, -m.c / det, m.a / det};
}

IntMat mod_mat(const IntMat& x, i64 m) {
  return {mod(x.a, m), mod(x.b, m), mod(x.c, m), mod(x.d, m)};
}

IntMat mul_mod(const IntMat& x, const IntMat& y, i64 m) {
  return {mod(x.a * y.a + x.b * y.c, m), mod(x.a * y.b + x.b * y.d, m),
          mod(x.c * y.a + x.d * y.c, m), mod(x.c * y.b + x.d * y.d, m)};
}

}  // namespace shc
