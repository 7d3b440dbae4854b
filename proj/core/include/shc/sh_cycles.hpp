#pragma once

// Stark-Heegner cycles Y_psi x {tau_psi} in the quotient of H x H_p by
// PGL2+(Z[1/p]), and canonical coordinates for their sample points.
//
// A point of the quotient has a representative (z, tau) with z in the
// fundamental domain of PSL2(Z) and tau in the fiber over the base vertex.
// The elements of PGL2+(Z[1/p]) fixing the base vertex are PSL2(Z) (up to
// scalars), so that representative is unique once z is interior, and tau is
// recorded by its residue in F_{p^2} minus F_p.

#include <cstdint>
#include <functional>
#include <vector>

#include "shc/bruhat_tits.hpp"
#include "shc/class_groups.hpp"
#include "shc/embeddings.hpp"
#include "shc/hyperbolic.hpp"
#include "shc/padic.hpp"

namespace shc {

struct SHCycle {
  std::size_t class_id = 0;  // index in picard_S(order, p)
  Embedding embedding;
  i64 p = 0;
  Qp2Element tau_p;
  GeodesicArc geodesic;
  i64 disc_p = 0;
};

struct CyclePoint {
  std::size_t t_index = 0;
  UHPoint z;
  int residue = 0;
  bool boundary = false;
};

/// tau_psi in Q_{p^2}: (-b - f sqrt(dK)) / (2a) for the form of e.
Qp2Element tau_p_of(const Embedding& e, i64 p, long N);

/// One cycle per class of Pic+(O_f[1/p]), each the star-translate of the
/// principal embedding. Retries with doubled precision on underflow.
std::vector<SHCycle> build_cycles(const QuadField& k, i64 f, i64 p, long precision = 40);

struct CanonicalOptions {
  /// Extra element h of GL2+(Z[1/p]) applied to the cycle before navigating.
  RatMat perturbation = RatMat::identity();
  /// Arc-length offset of the first sample from the apex.
  double t0 = 0;
};

/// Streams the M canonical points z(t0 + k L / M) of the cycle.
void for_each_canonical_point(const SHCycle& c, std::size_t M,
                              const std::function<void(const CyclePoint&)>& out,
                              const CanonicalOptions& opt = {});

std::vector<CyclePoint> canonical_points(const SHCycle& c, std::size_t M,
                                         const CanonicalOptions& opt = {});

/// 4^degree |N(f^2 dK)|, the discriminant of the homogeneous toral set.
mpz_class toral_discriminant(int degree, const mpz_class& abs_norm);
/// 4 f^2 dK over Q.
mpz_class toral_discriminant(const QuadField& k, i64 f);

/// Prime-to-p part of the discriminant.
i64 disc_p(i64 disc, i64 p);

}  // namespace shc
