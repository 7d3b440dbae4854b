#pragma once

// Fixed-precision p-adic numbers and the unramified quadratic extension
// Q_{p^2} = Q_p(alpha), alpha^2 = u with u the least positive non-residue.

#include <ostream>

#include "shc/arith.hpp"
#include "shc/quadratic_orders.hpp"

namespace shc {

/// p^v * unit with unit known mod p^prec. Zero is kept with its absolute
/// precision (the value is 0 mod p^abs_prec).
class PadicNumber {
 public:
  static constexpr long kMinPrecision = 2;
  /// Absolute precision used for zeros that are known exactly.
  static constexpr long kExact = 1L << 40;

  PadicNumber() = default;
  static PadicNumber zero(i64 p, long abs_prec);
  /// Relative precision N digits (zero gets absolute precision N).
  static PadicNumber from_rational(const mpq_class& q, i64 p, long N);
  static PadicNumber from_integer(i64 n, i64 p, long N) {
    return from_rational(mpq_class(mpz_class(static_cast<long>(n))), p, N);
  }

  i64 p() const { return p_; }
  bool is_zero() const { return zero_; }
  /// Valuation; for zero this is the absolute precision.
  long valuation() const { return v_; }
  const mpz_class& unit() const { return unit_; }
  long rel_prec() const { return zero_ ? 0 : prec_; }
  long abs_prec() const { return zero_ ? v_ : v_ + prec_; }

  /// Value mod p^k as an integer in [0, p^k); needs valuation >= 0.
  mpz_class mod_pk(long k) const;
  /// Canonical rational m / p^j in [0, p^n) congruent to the value mod p^n.
  mpq_class truncate(long n) const;
  /// Rational m / p^j carrying every known digit.
  mpq_class to_rational() const;

  PadicNumber inverse() const;
  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) {
    return a + (-b);
  }
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
    return a * b.inverse();
  }
  /// Agreement to the common absolute precision.
  friend bool equal_at_precision(const PadicNumber& a, const PadicNumber& b);
  friend std::ostream& operator<<(std::ostream& os, const PadicNumber& x);

 private:
  i64 p_ = 0;
  bool zero_ = true;
  long v_ = 0;
  long prec_ = 0;
  mpz_class unit_;

  void check() const;
};

/// Least positive quadratic non-residue mod the odd prime p.
i64 least_nonresidue(i64 p);

class Qp2Element {
 public:
  Qp2Element() = default;
  Qp2Element(PadicNumber x, PadicNumber y, i64 u);
  /// alpha itself at precision N.
  static Qp2Element alpha(i64 p, long N);
  static Qp2Element from_rational(const mpq_class& q, i64 p, long N);

  const PadicNumber& x() const { return x_; }
  const PadicNumber& y() const { return y_; }
  i64 u() const { return u_; }
  i64 p() const { return x_.p(); }

  Qp2Element conj() const { return {x_, -y_, u_}; }
  /// x^2 - u y^2 in Q_p.
  PadicNumber norm() const;
  Qp2Element inverse() const;

  friend Qp2Element operator+(const Qp2Element& a, const Qp2Element& b);
  friend Qp2Element operator-(const Qp2Element& a, const Qp2Element& b);
  friend Qp2Element operator*(const Qp2Element& a, const Qp2Element& b);
  friend Qp2Element operator/(const Qp2Element& a, const Qp2Element& b) {
    return a * b.inverse();
  }
  friend bool equal_at_precision(const Qp2Element& a, const Qp2Element& b) {
    return equal_at_precision(a.x_, b.x_) && equal_at_precision(a.y_, b.y_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Qp2Element& z);

 private:
  PadicNumber x_, y_;
  i64 u_ = 0;
};

/// s = c alpha with s^2 = dK, c the Hensel lift of the least positive square
/// root of dK / u mod p. Requires p odd and inert in K, N >= 2.
Qp2Element embed_sqrt_dK(const QuadField& k, i64 p, long N = 40);

/// (a tau + b) / (c tau + d) for g with entries in Z[1/p] (or Q).
Qp2Element moebius_qp2(const RatMat& g, const Qp2Element& tau);

/// Residue field F_{p^2} = F_p(alpha bar).
struct Fp2 {
  i64 x = 0, y = 0;
  friend bool operator==(const Fp2&, const Fp2&) = default;
};
Fp2 fp2_mul(const Fp2& a, const Fp2& b, i64 p, i64 u);
Fp2 fp2_inv(const Fp2& a, i64 p, i64 u);
/// Moebius action of an integral matrix mod p on F_{p^2} minus F_p.
Fp2 fp2_moebius(const IntMat& g, const Fp2& z, i64 p, i64 u);

}  // namespace shc
