#pragma once

// Primitive indefinite binary quadratic forms (a, b, c), their reduction
// cycles and Gauss composition. These model the narrow class group of the
// order of discriminant b^2 - 4ac.
//
// Matrices act on forms by M.q = q o M^{-1}, so the roots of M.q are M
// applied to the roots of q.

#include <map>
#include <ostream>
#include <vector>

#include "shc/arith.hpp"
#include "shc/quadratic_orders.hpp"

namespace shc {

struct QForm {
  i64 a = 0, b = 0, c = 0;

  i64 disc() const { return b * b - 4 * a * c; }
  bool is_primitive() const { return gcd(a, b, c) == 1; }
  /// (|a|, b, c) lexicographic order used for canonical representatives.
  friend bool key_less(const QForm& x, const QForm& y);
  friend bool operator==(const QForm&, const QForm&) = default;
  friend bool operator<(const QForm& x, const QForm& y) {
    return key_less(x, y) || (!key_less(y, x) && x.a < y.a);
  }
  friend std::ostream& operator<<(std::ostream& os, const QForm& q) {
    return os << "(" << q.a << "," << q.b << "," << q.c << ")";
  }
};

/// M.q with M in GL2(Z); exact, throws MathError on overflow.
QForm act(const IntMat& m, const QForm& q);

/// Throws MathError unless q is primitive with positive non-square disc.
void check_form(const QForm& q);

bool is_reduced(const QForm& q);

/// One reduction step: rho(q) = step.q with step in SL2(Z).
struct RhoStep {
  QForm form;
  IntMat step;
};
RhoStep rho(const QForm& q);

/// All reduced forms equivalent to q under rho, in order, starting at q.
std::vector<QForm> rho_cycle(const QForm& q);

struct Reduction {
  QForm form;  // canonical reduced representative
  BigMat m;    // form == m.q, m in SL2(Z); entries can grow like the unit
};

/// Reduces q and moves to the (|a|, b, c)-least form of its rho cycle.
Reduction reduce_form(const QForm& q);
/// reduce_form(q).form without building the matrix.
QForm canonical_form(const QForm& q);

/// The principal form of discriminant disc (not necessarily reduced).
QForm principal_form(i64 disc);

/// Dirichlet composition. The class of the result is the product class.
QForm compose(const QForm& q1, const QForm& q2);

/// Opposite (inverse) class representative (a, -b, c).
inline QForm opposite(const QForm& q) { return {q.a, -q.b, q.c}; }

class NarrowClassGroup {
 public:
  explicit NarrowClassGroup(i64 disc);

  i64 disc() const { return disc_; }
  std::size_t order() const { return classes_.size(); }
  const std::vector<QForm>& classes() const { return classes_; }
  /// Reduced forms of each class cycle.
  const std::vector<std::vector<QForm>>& cycles() const { return cycles_; }
  std::size_t identity() const { return identity_; }

  /// Index of the class containing q.
  std::size_t class_of(const QForm& q) const;
  std::size_t multiply(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const;

 private:
  i64 disc_;
  std::vector<QForm> classes_;
  std::vector<std::vector<QForm>> cycles_;
  std::map<QForm, std::size_t> index_;  // every reduced form -> class
  std::size_t identity_ = 0;
};

/// Pic+(O) for the order of discriminant disc.
NarrowClassGroup narrow_class_group(i64 disc);

/// Pic+(O_f[1/p]) for p inert in K and coprime to f. The class of p O_f is
/// trivial in that case, so this is Pic+(O_f).
NarrowClassGroup picard_S(const Order& order, i64 p);

}  // namespace shc
