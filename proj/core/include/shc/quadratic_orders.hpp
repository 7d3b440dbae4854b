#pragma once

// Real quadratic fields Q(sqrt D) and their orders O_f = Z[f w_K].
//
// Elements are kept exactly as (x + y sqrt(d_K)) / 2 with rational x, y, so
// every optimality and unit test downstream is exact.

#include <ostream>
#include <string>

#include "shc/arith.hpp"

namespace shc {

struct QuadField {
  i64 D = 0;   // squarefree > 1
  i64 dK = 0;  // fundamental discriminant
  int t = 0;   // trace of w_K; w_K = (t + sqrt dK) / 2

  friend bool operator==(const QuadField&, const QuadField&) = default;
};

/// Builds Q(sqrt D). Throws MathError unless D > 1 is squarefree.
QuadField make_field(i64 D);

/// The field whose fundamental discriminant is dK.
QuadField field_from_discriminant(i64 dK);

class QuadElement {
 public:
  QuadElement() = default;
  QuadElement(i64 dK, mpq_class x, mpq_class y);

  static QuadElement integer(i64 dK, i64 n);
  /// w_K = (t + sqrt dK) / 2.
  static QuadElement omega(const QuadField& k);
  /// w_{K,0} = sqrt dK.
  static QuadElement omega0(const QuadField& k);

  i64 dK() const { return dK_; }
  const mpq_class& x() const { return x_; }
  const mpq_class& y() const { return y_; }

  mpq_class trace() const { return x_; }
  mpq_class norm() const;
  QuadElement conj() const { return {dK_, x_, -y_}; }

  /// True when the element lies in O_K.
  bool is_integral() const;
  /// True when the element lies in O_f.
  bool in_order(const QuadField& k, i64 f) const;

  /// Numerical value under the embedding sqrt dK > 0.
  double to_double() const;
  /// log of the value, accurate for huge units.
  double log_abs() const;
  /// Sign of the real value (exact).
  int sign() const;

  friend QuadElement operator+(const QuadElement& a, const QuadElement& b);
  friend QuadElement operator-(const QuadElement& a, const QuadElement& b);
  friend QuadElement operator*(const QuadElement& a, const QuadElement& b);
  friend QuadElement operator-(const QuadElement& a) {
    return {a.dK_, -a.x_, -a.y_};
  }
  friend bool operator==(const QuadElement& a, const QuadElement& b) {
    return a.dK_ == b.dK_ && a.x_ == b.x_ && a.y_ == b.y_;
  }
  friend std::ostream& operator<<(std::ostream& os, const QuadElement& e);

  QuadElement pow(unsigned n) const;

 private:
  i64 dK_ = 0;
  mpq_class x_, y_;
};

struct Order {
  QuadField field;
  i64 f = 1;

  i64 discriminant() const { return f * f * field.dK; }
  /// O_f is contained in O_g iff g | f.
  bool contained_in(const Order& other) const;
};

Order make_order(const QuadField& k, i64 f);
/// Splits a discriminant Delta = f^2 dK into its order.
Order order_from_discriminant(i64 disc);

struct TraceZeroSplit {
  mpq_class a;    // trace, an integer for order elements
  QuadElement y;  // trace-zero part
};

/// x = (a + y) / 2 with tr(y) = 0.
TraceZeroSplit trace_zero_decomposition(const QuadElement& x);

/// Fundamental unit eps > 1 of O_K.
QuadElement fundamental_unit(const QuadField& k);

/// Generator eps+ > 1 of the totally positive units of O_f.
QuadElement totally_positive_fundamental_unit(const Order& o);

/// A unit (T + U sqrt disc) / 2 of the order of discriminant disc, with
/// T^2 - disc U^2 = 4 * norm.
struct OrderUnit {
  mpz_class T, U;
  int norm = 1;
};

/// Fundamental unit > 1 of the order of discriminant disc, from the period of
/// the continued fraction of its reduced principal root. Falls back to a
/// bounded Pell search when the period exceeds max_period.
OrderUnit order_fundamental_unit(i64 disc, i64 max_period = 10'000'000);

/// Bounded brute-force search for the least unit (T + U sqrt disc)/2 with
/// T^2 - disc U^2 = 4 * norm and 1 <= U <= height_bound. Throws
/// BoundExhausted when nothing is found.
OrderUnit pell_search(i64 disc, int norm, i64 height_bound = 1'000'000);

}  // namespace shc
