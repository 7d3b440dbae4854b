#pragma once

// Upper half plane geometry: Moebius maps, reduction to the standard
// fundamental domain of PSL2(Z), geodesics of embeddings and their sampling.

#include <complex>
#include <vector>

#include "shc/class_groups.hpp"
#include "shc/embeddings.hpp"

namespace shc {

using UHPoint = std::complex<double>;

/// (a z + b) / (c z + d).
UHPoint moebius(const IntMat& g, UHPoint z);
UHPoint moebius(const RatMat& g, UHPoint z);
/// Hyperbolic distance in H.
double hyperbolic_distance(UHPoint z, UHPoint w);

struct FDReduction {
  UHPoint z;    // in the closed fundamental domain
  IntMat gamma;  // z = gamma . input, gamma in SL2(Z)
  bool boundary = false;  // within boundary_tol of |Re z| = 1/2 or |z| = 1
};

/// Ties on the boundary are moved toward Re z >= 0. Throws PrecisionError
/// after max_steps translate-invert rounds.
FDReduction reduce_to_fundamental_domain(UHPoint z, int max_steps = 1000,
                                         double boundary_tol = 1e-10);

/// Geodesic of a form: the half circle through its roots, oriented toward
/// tau = (-b - sqrt disc) / (2a) and parametrized by arc length from the apex.
class GeodesicArc {
 public:
  GeodesicArc(const QForm& q, double period);

  const QForm& form() const { return q_; }
  double tau() const;        // target endpoint
  double tau_prime() const;  // source endpoint
  double center() const { return center_; }
  double radius() const { return radius_; }
  double period() const { return period_; }
  UHPoint apex() const { return {center_, radius_}; }

  /// Point at signed arc length t from the apex.
  UHPoint at(double t) const;
  /// Arc-length coordinate of a point on the geodesic.
  double coordinate(UHPoint w) const;

 private:
  QForm q_;
  double sqrt_disc_;
  double center_, radius_;
  int sigma_;  // +1 when tau is the right endpoint
  double period_;
};

/// s with coordinate_{g.q}(g w) = coordinate_q(w) + s for w on the geodesic
/// of q, where g.q is the form of g W g^{-1} and det g > 0. Computed from
/// exact integers, so large g lose no accuracy.
double transport_shift(const QForm& q, const RatMat& g);

/// L = 2 log eps+ of the order of discriminant disc.
double geodesic_period(i64 disc);

GeodesicArc geodesic_from_embedding(const Embedding& e);

/// M points at t0 + k L / M.
std::vector<UHPoint> sample_geodesic(const GeodesicArc& g, int M, double t0 = 0);

/// psi(eps+), the generator of the stabilizer of the geodesic.
BigMat automorph(const Embedding& e);

/// Walks a closed geodesic through the rho cycle of its reduced forms so that
/// points far from the apex are produced on a nearby translate instead of by
/// evaluating tanh/sech at huge arguments.
class GeodesicWalker {
 public:
  /// q must be reduced. When modulus > 0 the SL2(Z) translating matrices are
  /// tracked mod that modulus.
  GeodesicWalker(const QForm& q, i64 modulus = 0);

  double period() const { return period_; }
  std::size_t cycle_length() const { return forms_.size(); }

  struct Point {
    UHPoint w;       // SL2(Z)-equivalent to the point on the start geodesic
    IntMat to_start_mod;  // G with (start point) = G . w, entries mod modulus
  };
  /// Point at arc coordinate t (from the apex of q, toward tau), mod period.
  Point at(double t) const;

 private:
  i64 modulus_;
  std::vector<QForm> forms_;
  std::vector<double> shift_;       // coordinate of chunk apex on start geodesic
  std::vector<IntMat> to_start_;    // G_j mod modulus
  std::vector<GeodesicArc> arcs_;
  std::vector<double> sorted_shift_;  // shifts reduced into [0, period)
  std::vector<std::size_t> sorted_idx_;
  double period_ = 0;
};

}  // namespace shc
