#include "shc/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "shc/errors.hpp"

namespace shc {

UHPoint moebius(const IntMat& g, UHPoint z) {
  return (static_cast<double>(g.a) * z + static_cast<double>(g.b)) /
         (static_cast<double>(g.c) * z + static_cast<double>(g.d));
}

UHPoint moebius(const RatMat& g, UHPoint z) {
  return (g.a.get_d() * z + g.b.get_d()) / (g.c.get_d() * z + g.d.get_d());
}

double hyperbolic_distance(UHPoint z, UHPoint w) {
  double num = std::norm(z - w);
  return std::acosh(1 + num / (2 * z.imag() * w.imag()));
}

FDReduction reduce_to_fundamental_domain(UHPoint z, int max_steps,
                                         double boundary_tol) {
  if (!(z.imag() > 0)) throw MathError("reduce_to_fundamental_domain: Im z <= 0");
  IntMat g = IntMat::identity();
  double x = z.real(), y = z.imag();
  for (int step = 0;; ++step) {
    if (step >= max_steps)
      throw PrecisionError("fundamental domain reduction did not terminate");
    double n = std::ceil(x - 0.5);
    if (n != 0) {
      x -= n;
      i64 k = static_cast<i64>(n);
      g = {g.a - k * g.c, g.b - k * g.d, g.c, g.d};
    }
    double r2 = x * x + y * y;
    if (r2 < 1) {
      // z -> -1/z
      x = -x / r2;
      y = y / r2;
      g = {-g.c, -g.d, g.a, g.b};
      continue;
    }
    if (r2 == 1 && x < 0) {
      x = -x;
      g = {-g.c, -g.d, g.a, g.b};
    }
    break;
  }
  FDReduction out{{x, y}, g, false};
  out.boundary = std::abs(std::abs(x) - 0.5) < boundary_tol ||
                 std::abs(x * x + y * y - 1) < boundary_tol;
  return out;
}

GeodesicArc::GeodesicArc(const QForm& q, double period)
    : q_(q), period_(period) {
  const i64 disc = q.disc();
  if (disc <= 0 || q.a == 0) throw MathError("GeodesicArc: needs disc > 0, a != 0");
  sqrt_disc_ = std::sqrt(static_cast<double>(disc));
  const double a = static_cast<double>(q.a), b = static_cast<double>(q.b);
  center_ = -b / (2 * a);
  radius_ = sqrt_disc_ / (2 * std::abs(a));
  sigma_ = q.a > 0 ? -1 : 1;
}

double GeodesicArc::tau() const { return center_ + sigma_ * radius_; }
double GeodesicArc::tau_prime() const { return center_ - sigma_ * radius_; }

UHPoint GeodesicArc::at(double t) const {
  return {center_ + radius_ * sigma_ * std::tanh(t), radius_ / std::cosh(t)};
}

double GeodesicArc::coordinate(UHPoint w) const {
  return std::log(std::abs(w - tau_prime()) / std::abs(w - tau()));
}

namespace {

// log(|x| + |y| sqrt d) for integers x, y not both zero
double log_sum(const mpz_class& x, const mpz_class& y, i64 d) {
  const double ls = 0.5 * std::log(static_cast<double>(d));
  if (x == 0) return log_mpz(abs(y)) + ls;
  if (y == 0) return log_mpz(abs(x));
  const double lx = log_mpz(abs(x)), ly = log_mpz(abs(y)) + ls;
  return std::max(lx, ly) + std::log1p(std::exp(-std::abs(lx - ly)));
}

}  // namespace

double transport_shift(const QForm& q, const RatMat& g) {
  if (!(g.det() > 0)) throw MathError("transport_shift: needs det g > 0");
  // log|c tau + d| - log|c tau' + d| = log|X - c s| - log|X + c s|, X = 2ad - bc
  mpz_class den = lcm(g.c.get_den(), g.d.get_den());
  mpz_class c = g.c.get_num() * (den / g.c.get_den());
  mpz_class d = g.d.get_num() * (den / g.d.get_den());
  if (c == 0) return 0.0;
  const i64 disc = q.disc();
  mpz_class X = 2 * mpz_class(static_cast<long>(q.a)) * d - mpz_class(static_cast<long>(q.b)) * c;
  mpz_class N = X * X - c * c * disc;
  const double lN = log_mpz(abs(N));
  // |X - cs| |X + cs| = |N|; evaluate the side without cancellation
  if (sgn(X) * sgn(c) > 0) return lN - 2 * log_sum(X, c, disc);
  return 2 * log_sum(X, c, disc) - lN;
}

namespace {

OrderUnit totally_positive(i64 disc) {
  OrderUnit u = order_fundamental_unit(disc);
  if (u.norm == -1) {
    mpz_class T = (u.T * u.T + u.U * u.U * disc) / 2;
    mpz_class U = u.T * u.U;
    u = {T, U, 1};
  }
  return u;
}

}  // namespace

double geodesic_period(i64 disc) {
  OrderUnit u = totally_positive(disc);
  QuadElement e(disc, mpq_class(u.T), mpq_class(u.U));
  return 2 * e.log_abs();
}

GeodesicArc geodesic_from_embedding(const Embedding& e) {
  return GeodesicArc(form_of(e), geodesic_period(e.disc()));
}

std::vector<UHPoint> sample_geodesic(const GeodesicArc& g, int M, double t0) {
  if (M < 1) throw MathError("sample_geodesic: M must be positive");
  std::vector<UHPoint> out;
  out.reserve(static_cast<std::size_t>(M));
  for (int k = 0; k < M; ++k) out.push_back(g.at(t0 + k * g.period() / M));
  return out;
}

BigMat automorph(const Embedding& e) {
  OrderUnit u = totally_positive(e.disc());
  BigMat W{e.W.a, e.W.b, e.W.c, e.W.d};
  return {(u.T + u.U * W.a) / 2, u.U * W.b / 2, u.U * W.c / 2,
          (u.T + u.U * W.d) / 2};
}

GeodesicWalker::GeodesicWalker(const QForm& q, i64 modulus) : modulus_(modulus) {
  if (!is_reduced(q)) throw MathError("GeodesicWalker: form must be reduced");
  IntMat G = IntMat::identity();
  double s = 0;
  QForm cur = q;
  for (;;) {
    forms_.push_back(cur);
    arcs_.emplace_back(cur, 0.0);
    shift_.push_back(s);
    to_start_.push_back(G);
    RhoStep st = rho(cur);
    IntMat N = adjugate(st.step);
    GeodesicArc next(st.form, 0.0);
    s += arcs_.back().coordinate(moebius(N, next.apex()));
    if (modulus_ > 0) G = mul_mod(G, mod_mat(N, modulus_), modulus_);
    cur = st.form;
    if (cur == q) break;
    if (forms_.size() > 50'000'000) throw InternalFault("walker cycle runaway");
  }
  period_ = std::abs(s);
  if (!(period_ > 0)) throw InternalFault("walker: zero period");
  sorted_idx_.resize(forms_.size());
  std::iota(sorted_idx_.begin(), sorted_idx_.end(), 0);
  std::vector<double> norm(forms_.size());
  for (std::size_t j = 0; j < forms_.size(); ++j) {
    double r = std::fmod(shift_[j], period_);
    norm[j] = r < 0 ? r + period_ : r;
  }
  std::sort(sorted_idx_.begin(), sorted_idx_.end(),
            [&](std::size_t i, std::size_t j) { return norm[i] < norm[j]; });
  for (std::size_t j : sorted_idx_) sorted_shift_.push_back(norm[j]);
}

GeodesicWalker::Point GeodesicWalker::at(double t) const {
  double T = std::fmod(t, period_);
  if (T < 0) T += period_;
  auto it = std::lower_bound(sorted_shift_.begin(), sorted_shift_.end(), T);
  std::size_t hi = static_cast<std::size_t>(it - sorted_shift_.begin());
  std::size_t n = sorted_shift_.size();
  std::size_t a = hi % n, b = (hi + n - 1) % n;
  auto dist = [&](std::size_t k) {
    return std::abs(std::remainder(T - sorted_shift_[k], period_));
  };
  std::size_t k = dist(a) <= dist(b) ? a : b;
  std::size_t j = sorted_idx_[k];
  double u = std::remainder(T - shift_[j], period_);
  Point p;
  p.w = arcs_[j].at(u);
  p.to_start_mod = modulus_ > 0 ? to_start_[j] : IntMat::identity();
  return p;
}

}  // namespace shc
