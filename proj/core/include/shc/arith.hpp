#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <ostream>

#include <gmpxx.h>

namespace shc {

using i64 = std::int64_t;
using i128 = __int128;

i64 gcd(i64 a, i64 b);
i64 gcd(i64 a, i64 b, i64 c);

struct ExtGcd {
  i64 g, x, y;  // g = x*a + y*b, g >= 0
};
ExtGcd ext_gcd(i64 a, i64 b);

/// Floor of the square root of n >= 0.
i64 isqrt(i64 n);
bool is_square(i64 n);
bool is_squarefree(i64 n);
bool is_prime(i64 n);
bool is_fundamental_discriminant(i64 d);

/// Kronecker symbol (d | n) for n > 0.
int kronecker(i64 d, i64 n);

/// Non-negative residue of a mod m (m > 0).
i64 mod(i64 a, i64 m);
i64 mul_mod(i64 a, i64 b, i64 m);
i64 inv_mod(i64 a, i64 m);

/// p-adic valuation of a non-zero integer or rational.
int valuation(const mpz_class& n, i64 p);
int valuation(const mpq_class& q, i64 p);

/// Largest divisor of n coprime to p.
i64 prime_to_p_part(i64 n, i64 p);
bool is_power_of(const mpz_class& n, i64 p);

mpz_class pow_mpz(i64 base, unsigned long e);
mpq_class pow_mpq(i64 base, long e);

/// Natural log of a positive big integer, accurate to double precision.
double log_mpz(const mpz_class& n);

/// Row-major 2x2 matrix [[a, b], [c, d]].
template <class T>
struct Mat2 {
  T a{}, b{}, c{}, d{};

  static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }

  T det() const { return a * d - b * c; }
  T trace() const { return a + d; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend Mat2 operator-(const Mat2& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << "[[" << m.a << ", " << m.b << "], [" << m.c << ", " << m.d
              << "]]";
  }
};

using IntMat = Mat2<i64>;
using BigMat = Mat2<mpz_class>;
using RatMat = Mat2<mpq_class>;

/// Adjugate; equals the inverse for determinant one.
template <class T>
Mat2<T> adjugate(const Mat2<T>& m) {
  return {m.d, -m.b, -m.c, m.a};
}

RatMat to_rat(const IntMat& m);
RatMat to_rat(const BigMat& m);
RatMat inverse(const RatMat& m);

/// Reduce every entry mod m into [0, m).
IntMat mod_mat(const IntMat& x, i64 m);
IntMat mul_mod(const IntMat& x, const IntMat& y, i64 m);

}  // namespace shc
