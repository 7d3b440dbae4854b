#pragma once

// Vertices of the Bruhat-Tits tree of PGL2(Q_p) as balls B(x, p^-n) in Q_p.
//
// The ball (n, x) is the image of the base vertex under [[p^n, x], [0, 1]];
// in lattice terms it is the class of the lattice spanned by the columns of
// that matrix. Points x + y alpha of the unramified locus reduce to the ball
// (v(y), x).

#include <ostream>
#include <string>
#include <vector>

#include "shc/padic.hpp"

namespace shc {

struct TreeVertex {
  i64 p = 0;
  long n = 0;
  mpq_class center;  // canonical m / p^k in [0, p^n)

  int parity() const { return static_cast<int>(((n % 2) + 2) % 2); }
  friend bool operator==(const TreeVertex& a, const TreeVertex& b) {
    return a.p == b.p && a.n == b.n && a.center == b.center;
  }
  friend std::ostream& operator<<(std::ostream& os, const TreeVertex& v) {
    return os << "B(" << v.center << ", " << v.p << "^" << -v.n << ")";
  }
};

TreeVertex base_vertex(i64 p);

/// Ball with canonical center x mod p^n.
TreeVertex make_vertex(i64 p, long n, const mpq_class& x);

TreeVertex reduce_point(const Qp2Element& tau);

/// g . v for g in GL2(Q_p) with rational entries.
TreeVertex act_on_vertex(const RatMat& g, const TreeVertex& v);

/// [[1, -x], [0, p^n]] with x the canonical center; sends v to v0.
RatMat navigate_to_base(const TreeVertex& v);

/// Index of tau mod p in F_{p^2} minus F_p: xbar (p - 1) + (ybar - 1).
int residue_class(const Qp2Element& tau);
int residue_index(const Fp2& z, i64 p);
Fp2 residue_from_index(int r, i64 p);
inline int residue_class_count(i64 p) { return static_cast<int>(p * p - p); }

/// Vertices within distance R of v0, base first, in breadth-first order.
std::vector<TreeVertex> neighborhood(i64 p, int R);
/// Graphviz description of that neighbourhood, vertices colored by parity.
std::string neighborhood_dot(i64 p, int R);

}  // namespace shc
