#pragma once

// Optimal embeddings psi: K -> M2(Q), stored through W = psi(f w_{K,0}).
//
// psi(sqrt dK) = W / f and psi(x + y f w_K) = x I + y (f t I + W) / 2.

#include <optional>
#include <set>
#include <vector>

#include "shc/class_groups.hpp"
#include "shc/quadratic_orders.hpp"

namespace shc {

struct Embedding {
  QuadField field;
  i64 f = 1;
  IntMat W;

  i64 disc() const { return f * f * field.dK; }
  /// Exact image of a field element.
  RatMat image(const QuadElement& x) const;
  /// psi(f w_K) = (f t I + W) / 2.
  RatMat image_f_omega() const;
};

/// W = [[b, 2c], [-2a, -b]]; W has eigenvalue +sqrt(disc) at
/// tau = (-b - sqrt disc) / (2a).
Embedding embedding_from_form(const QForm& q, const QuadField& k, i64 f);

/// The form (a, b, c) with W = [[b, 2c], [-2a, -b]]; needs even off-diagonal.
QForm form_of(const IntMat& W);
inline QForm form_of(const Embedding& e) { return form_of(e.W); }

/// g e g^{-1} as an integral embedding of the same conductor. Throws
/// MathError when the conjugate is not integral.
Embedding conjugate(const IntMat& g, const Embedding& e);

/// S = {infinity} (p == 0) or S = {infinity, p}.
struct SSet {
  i64 p = 0;
};

struct OptimalityVerdict {
  bool optimal = false;
  bool c1 = false, c2 = false, c3 = false;
};

/// Conductor g' with psi(K) cap M2(Z) = psi(O_g').
mpq_class embedding_conductor(const Embedding& e);

/// Evaluates the three equivalent optimality criteria and throws
/// InternalFault if they disagree.
OptimalityVerdict is_optimal(const Embedding& e, const Order& order, SSet S = {});

/// t * e via Gauss composition of the underlying forms; the result is the
/// canonical reduced representative of the new class.
Embedding star_action(const QForm& t, const Embedding& e);

struct BruteForceClasses {
  std::set<QForm> classes;       // canonical reduced forms
  std::size_t embeddings = 0;    // optimal W found in the box
  std::size_t certificate_components = 0;  // merged by explicit S, T words
  bool certificate_sound = true;  // no component spans two classes
};

/// Enumerates every trace-zero W with W^2 = disc I, |entries| <= bound and
/// conductor matching disc, then merges conjugates. Throws BoundExhausted
/// when the box cannot contain a reduced representative of every class.
BruteForceClasses enumerate_classes_bruteforce(i64 disc, i64 coeff_bound,
                                               int word_length);

}  // namespace shc
