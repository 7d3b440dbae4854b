#pragma once

// ATR cycles over a real quadratic base field F with narrow class number
// one. Elements of F are QuadElements over dK_F; sigma0 takes sqrt(dK_F) to
// its positive root and sigma1 to the negative one. K = F(sqrt delta) is
// complex at sigma0 and split at sigma1.

#include <complex>
#include <vector>

#include "shc/quadratic_orders.hpp"

namespace shc {

struct BaseField {
  QuadField F;
  QuadElement eps;  // fundamental unit of Z_F
};

/// F = Q(sqrt D) for D in {2, 5, 13}.
BaseField make_base_field(i64 D);

/// Element a0 + a1 w_F of Z_F.
QuadElement zf(const BaseField& F, i64 a0, i64 a1);
double sigma0(const QuadElement& x);
double sigma1(const QuadElement& x);
bool in_ZF(const QuadElement& x);
/// Exact square root in Z_F when one exists.
bool sqrt_in_ZF(const QuadElement& a, QuadElement& root);

/// Element X + Y sqrt(dK) of K with X, Y in F.
struct KElement {
  QuadElement X, Y;
};

struct ATRExtension {
  BaseField F;
  QuadElement delta;
  QuadElement dK;  // delta or 4 delta
  QuadElement t;   // trace of w_K = (t + sqrt dK)/2
  QuadElement f;   // relative conductor in Z_F
};

bool is_atr(const BaseField& F, const QuadElement& delta);
ATRExtension make_atr_extension(const BaseField& F, const QuadElement& delta,
                                const QuadElement& f);

KElement k_mul(const ATRExtension& ext, const KElement& a, const KElement& b);
/// Relative norm X^2 - Y^2 dK in F.
QuadElement k_norm(const ATRExtension& ext, const KElement& a);
/// The two real values of a at the places above sigma1 (sqrt dK -> +, -).
std::pair<double, double> k_sigma1(const ATRExtension& ext, const KElement& a);

/// 2x2 matrix over F.
struct FMat {
  QuadElement a, b, c, d;
};
FMat fmat_mul(const FMat& x, const FMat& y);
bool fmat_equal(const FMat& x, const FMat& y);

/// Relative binary form over Z_F.
struct RelForm {
  QuadElement a, b, c;
  QuadElement disc() const;
};

/// (1, f t, f^2 (t^2 - dK) / 4), of discriminant f^2 dK.
RelForm principal_rel_form(const ATRExtension& ext);

struct ATRCycle {
  RelForm q;
  FMat W;  // [[b, 2c], [-2a, -b]], W^2 = f^2 dK I
  std::complex<double> tau0;
  double end_lo = 0, end_hi = 0;  // real roots at sigma1
};

ATRCycle atr_cycle_from_form(const RelForm& q, const ATRExtension& ext);

struct StabilizerUnit {
  QuadElement x, y;  // u = x + y f w_K
  KElement u;
  double rho = 0;    // ratio of the two real values above sigma1, > 1
  std::size_t box_solutions = 0;
  bool all_powers = false;  // every solution in the box is +-eps_F^a u^k
};

/// Smallest totally positive relative unit u > 1 of O_f, from all
/// (y, x) with coefficient height <= bound. Throws BoundExhausted.
StabilizerUnit unit_stabilizer_search(const ATRExtension& ext, i64 bound);

/// psi(x + y f w_K) = x I + y (f t I + W) / 2.
FMat psi(const ATRCycle& c, const ATRExtension& ext, const QuadElement& x,
         const QuadElement& y);

struct ATRDiscriminant {
  mpz_class norm;   // |N_{F/Q}(f^2 dK)|
  mpz_class toral;  // 16 |N_{F/Q}(f^2 dK)|
};
ATRDiscriminant atr_discriminant_norm(const ATRExtension& ext);

}  // namespace shc
