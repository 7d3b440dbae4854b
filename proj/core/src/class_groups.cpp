#include "shc/class_groups.hpp"

#include <algorithm>
#include <limits>

#include "shc/errors.hpp"

namespace shc {

namespace {

i64 narrow(i128 v, const char* what) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
    throw MathError(std::string(what) + ": coefficient overflow");
  return static_cast<i64>(v);
}

i128 eval(const QForm& q, i128 x, i128 y) {
  return q.a * x * x + q.b * x * y + q.c * y * y;
}

// Floor division for i128 with positive or negative divisor.
i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

bool key_less(const QForm& x, const QForm& y) {
  i64 ax = x.a < 0 ? -x.a : x.a, ay = y.a < 0 ? -y.a : y.a;
  if (ax != ay) return ax < ay;
  if (x.b != y.b) return x.b < y.b;
  return x.c < y.c;
}

QForm act(const IntMat& m, const QForm& q) {
  // q o adj(m); adj(m) = +-m^{-1} and q(-v) = q(v)
  const i128 n11 = m.d, n12 = -m.b, n21 = -m.c, n22 = m.a;
  i128 a = eval(q, n11, n21);
  i128 c = eval(q, n12, n22);
  i128 b = 2 * static_cast<i128>(q.a) * n11 * n12 +
           static_cast<i128>(q.b) * (n11 * n22 + n12 * n21) +
           2 * static_cast<i128>(q.c) * n21 * n22;
  return {narrow(a, "act"), narrow(b, "act"), narrow(c, "act")};
}

void check_form(const QForm& q) {
  i128 d = static_cast<i128>(q.b) * q.b - 4 * static_cast<i128>(q.a) * q.c;
  if (d <= 0) throw MathError("form discriminant must be positive");
  if (d > std::numeric_limits<i64>::max())
    throw MathError("form discriminant too large");
  if (is_square(static_cast<i64>(d)))
    throw MathError("form discriminant must not be a square");
  if (!q.is_primitive()) throw MathError("form is not primitive");
}

bool is_reduced(const QForm& q) {
  const i64 r = isqrt(q.disc());
  const i64 a2 = 2 * (q.a < 0 ? -q.a : q.a);
  return q.b > 0 && q.b <= r && a2 >= r - q.b + 1 && a2 <= r + q.b;
}

RhoStep rho(const QForm& q) {
  const i64 disc = q.disc();
  const i64 r = isqrt(disc);
  const i128 c = q.c;
  const i128 ac = c < 0 ? -c : c;
  // b' = -b + 2cs in the normalized window
  i128 lo = (ac > r) ? -ac + 1 : r - 2 * ac + 1;
  // smallest b' >= lo with b' == -b mod 2|c|
  i128 m = 2 * ac;
  i128 base = -static_cast<i128>(q.b);
  i128 k = floor_div(lo - base + m - 1, m);
  i128 bn = base + k * m;
  i128 s = (bn - base) / (2 * c);
  i128 cn = (bn * bn - disc) / (4 * c);
  RhoStep out;
  out.form = {narrow(c, "rho"), narrow(bn, "rho"), narrow(cn, "rho")};
  out.step = {narrow(s, "rho"), 1, -1, 0};
  return out;
}

std::vector<QForm> rho_cycle(const QForm& q) {
  std::vector<QForm> out{q};
  QForm cur = rho(q).form;
  while (!(cur == q)) {
    out.push_back(cur);
    if (out.size() > 100'000'000) throw InternalFault("rho cycle runaway");
    cur = rho(cur).form;
  }
  return out;
}

namespace {

// steps to the first reduced form, then the offset of the least form in its cycle
struct ReductionPath {
  std::vector<i64> pre;   // shifts of the reduction phase
  std::vector<i64> walk;  // shifts from the first reduced form to the least one
  QForm form;
};

ReductionPath reduction_path(const QForm& q, bool record) {
  check_form(q);
  ReductionPath out;
  QForm cur = q;
  int guard = 0;
  while (!is_reduced(cur)) {
    RhoStep st = rho(cur);
    cur = st.form;
    if (record) out.pre.push_back(st.step.a);
    if (++guard > 100'000) throw InternalFault("form reduction did not terminate");
  }
  QForm best = cur, walk = cur;
  std::size_t best_at = 0;
  std::vector<i64> shifts;
  for (std::size_t i = 1;; ++i) {
    RhoStep st = rho(walk);
    walk = st.form;
    if (record) shifts.push_back(st.step.a);
    if (walk == cur) break;
    if (key_less(walk, best)) {
      best = walk;
      best_at = i;
    }
  }
  if (record) out.walk.assign(shifts.begin(), shifts.begin() + static_cast<long>(best_at));
  out.form = best;
  return out;
}

}  // namespace

Reduction reduce_form(const QForm& q) {
  ReductionPath path = reduction_path(q, true);
  BigMat m = BigMat::identity();
  auto apply = [&m](i64 s) {
    // [[s, 1], [-1, 0]] * m
    BigMat n{mpz_class(static_cast<long>(s)) * m.a + m.c, mpz_class(static_cast<long>(s)) * m.b + m.d,
             -m.a, -m.b};
    m = n;
  };
  for (i64 s : path.pre) apply(s);
  for (i64 s : path.walk) apply(s);
  return {path.form, m};
}

QForm canonical_form(const QForm& q) { return reduction_path(q, false).form; }

QForm principal_form(i64 disc) {
  i64 b = mod(disc, 2);
  return {1, b, (b * b - disc) / 4};
}

QForm compose(const QForm& q1, const QForm& q2) {
  const i64 disc = q1.disc();
  if (q2.disc() != disc) throw MathError("compose: discriminant mismatch");
  const i128 a1 = q1.a, a2 = q2.a, b1 = q1.b, b2 = q2.b;
  if (a1 == 0 || a2 == 0) throw MathError("compose: leading coefficient zero");
  const i128 beta = (b1 + b2) / 2;
  ExtGcd g1 = ext_gcd(q1.a, q2.a);
  ExtGcd g2 = ext_gcd(g1.g, narrow(beta, "compose"));
  const i128 e = g2.g;
  const i128 u = static_cast<i128>(g2.x) * g1.x;
  const i128 v = static_cast<i128>(g2.x) * g1.y;
  const i128 w = g2.y;
  const i128 a3 = a1 * a2 / (e * e);
  const i128 mod2a = 2 * (a3 < 0 ? -a3 : a3);
  // B = (u a1 b2 + v a2 b1 + w (b1 b2 + disc)/2) / e, reduced mod 2a3
  auto mm = [&](i128 x) {
    i128 r = x % mod2a;
    return r < 0 ? r + mod2a : r;
  };
  // keep the numerator small by reducing mod 2 a3 e before dividing
  const i128 big = mod2a * e;
  auto mb = [&](i128 x) {
    i128 r = x % big;
    return r < 0 ? r + big : r;
  };
  i128 t1 = mb(mb(u * a1) * mb(b2));
  i128 t2 = mb(mb(v * a2) * mb(b1));
  i128 t3 = mb(mb(w) * mb((b1 * b2 + disc) / 2));
  i128 num = mb(t1 + t2 + t3);
  if (num % e != 0) throw InternalFault("compose: non-integral B");
  i128 B = mm(num / e);
  i128 cn = B * B - disc;
  if (cn % (4 * a3) != 0) throw InternalFault("compose: non-integral c");
  QForm out{narrow(a3, "compose"), narrow(B, "compose"),
            narrow(cn / (4 * a3), "compose")};
  return out;
}

NarrowClassGroup::NarrowClassGroup(i64 disc) : disc_(disc) {
  if (disc <= 0 || is_square(disc) || (mod(disc, 4) != 0 && mod(disc, 4) != 1))
    throw MathError("narrow_class_group: invalid discriminant " +
                    std::to_string(disc));
  const i64 r = isqrt(disc);
  // reduced forms: 0 < b <= r, r - b + 1 <= 2|a| <= r + b, ac = (b^2 - disc)/4
  std::vector<QForm> reduced;
  for (i64 b = (mod(disc, 2) == 1 ? 1 : 2); b <= r; b += 2) {
    const i64 n = (disc - b * b) / 4;
    i64 alo = (r - b + 2) / 2;
    i64 ahi = (r + b) / 2;
    if (alo < 1) alo = 1;
    for (i64 a = alo; a <= ahi; ++a) {
      if (n % a != 0) continue;
      i64 c = -n / a;
      if (gcd(a, b, c) != 1) continue;
      reduced.push_back({a, b, c});
      reduced.push_back({-a, b, -c});
    }
  }
  std::sort(reduced.begin(), reduced.end());
  for (const QForm& q : reduced) {
    if (index_.count(q)) continue;
    std::vector<QForm> cyc = rho_cycle(q);
    QForm best = *std::min_element(cyc.begin(), cyc.end(), key_less);
    std::size_t id = classes_.size();
    for (const QForm& f : cyc) index_[f] = id;
    classes_.push_back(best);
    // rotate so the canonical form comes first
    auto it = std::find(cyc.begin(), cyc.end(), best);
    std::rotate(cyc.begin(), it, cyc.end());
    cycles_.push_back(std::move(cyc));
  }
  // order classes by their canonical forms
  std::vector<std::size_t> perm(classes_.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t i, std::size_t j) { return classes_[i] < classes_[j]; });
  std::vector<std::size_t> where(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) where[perm[k]] = k;
  std::vector<QForm> cl(perm.size());
  std::vector<std::vector<QForm>> cy(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    cl[k] = classes_[perm[k]];
    cy[k] = std::move(cycles_[perm[k]]);
  }
  classes_ = std::move(cl);
  cycles_ = std::move(cy);
  for (auto& kv : index_) kv.second = where[kv.second];
  identity_ = class_of(principal_form(disc));
}

std::size_t NarrowClassGroup::class_of(const QForm& q) const {
  if (q.disc() != disc_) throw MathError("class_of: discriminant mismatch");
  auto it = index_.find(canonical_form(q));
  if (it == index_.end()) throw InternalFault("class_of: reduced form not enumerated");
  return it->second;
}

namespace {

// An equivalent form with a > 0; reduced forms alternate the sign of a.
QForm positive_leading(const std::vector<QForm>& cyc) {
  for (const QForm& f : cyc)
    if (f.a > 0) return f;
  throw InternalFault("cycle without positive leading coefficient");
}

}  // namespace

std::size_t NarrowClassGroup::multiply(std::size_t i, std::size_t j) const {
  return class_of(compose(positive_leading(cycles_.at(i)),
                          positive_leading(cycles_.at(j))));
}

std::size_t NarrowClassGroup::inverse(std::size_t i) const {
  return class_of(opposite(classes_.at(i)));
}

NarrowClassGroup narrow_class_group(i64 disc) { return NarrowClassGroup(disc); }

NarrowClassGroup picard_S(const Order& order, i64 p) {
  if (!is_prime(p)) throw MathError("picard_S: p must be prime");
  if (order.f % p == 0) throw MathError("picard_S: p divides the conductor");
  if (kronecker(order.field.dK, p) != -1)
    throw MathError("picard_S: p is not inert in K");
  return NarrowClassGroup(order.discriminant());
}

}  // namespace shc
