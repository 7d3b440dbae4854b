#include "shc/equidist_stats.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "shc/errors.hpp"

namespace shc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool inside_region(const Box& b) {
  return b.x1 >= -0.5 && b.x2 <= 0.5 && b.x1 <= b.x2 && b.y1 >= 1 && b.y1 <= b.y2;
}

bool overlap(const Box& a, const Box& b) {
  return a.x1 < b.x2 && b.x1 < a.x2 && a.y1 < b.y2 && b.y1 < a.y2;
}

}  // namespace

double hyperbolic_box_mass(const Box& b) {
  if (!inside_region(b)) throw MathError("box must lie in {|x| <= 1/2, y >= 1}");
  double inv2 = std::isinf(b.y2) ? 0.0 : 1.0 / b.y2;
  return 3.0 / std::numbers::pi * (b.x2 - b.x1) * (1.0 / b.y1 - inv2);
}

std::vector<double> cell_masses(const BoxPartition& P) {
  std::vector<double> m;
  double s = 0;
  for (const Box& b : P.boxes) {
    m.push_back(hyperbolic_box_mass(b));
    s += m.back();
  }
  m.push_back(1.0 - s);
  return m;
}

BoxPartition default_partition() {
  BoxPartition P;
  const double xs[4] = {-0.5, -1.0 / 6, 1.0 / 6, 0.5};
  const double ys[3] = {1.0, 1.5, 3.0};
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) P.boxes.push_back({xs[i], xs[i + 1], ys[j], ys[j + 1]});
  return P;
}

void validate_partition(const BoxPartition& P) {
  if (P.boxes.empty()) throw MathError("partition has no boxes");
  for (std::size_t i = 0; i < P.boxes.size(); ++i) {
    if (!inside_region(P.boxes[i])) throw MathError("box outside {|x| <= 1/2, y >= 1}");
    for (std::size_t j = 0; j < i; ++j)
      if (overlap(P.boxes[i], P.boxes[j])) throw MathError("partition boxes overlap");
  }
}

BoxPartition parse_partition(const std::string& spec) {
  if (spec.empty() || spec == "default") return default_partition();
  BoxPartition P;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    std::stringstream is(item);
    std::string tok;
    std::vector<double> v;
    while (std::getline(is, tok, ':')) {
      if (tok == "inf")
        v.push_back(kInf);
      else {
        std::size_t used = 0;
        double x = 0;
        try {
          x = std::stod(tok, &used);
        } catch (const std::exception&) {
          throw MathError("bad box coordinate '" + tok + "'");
        }
        if (used != tok.size()) throw MathError("bad box coordinate '" + tok + "'");
        v.push_back(x);
      }
    }
    if (v.size() != 4) throw MathError("box needs x1:x2:y1:y2, got '" + item + "'");
    P.boxes.push_back({v[0], v[1], v[2], v[3]});
  }
  validate_partition(P);
  return P;
}

std::string format_partition(const BoxPartition& P) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < P.boxes.size(); ++i) {
    const Box& b = P.boxes[i];
    if (i) os << ';';
    os << b.x1 << ':' << b.x2 << ':' << b.y1 << ':';
    if (std::isinf(b.y2))
      os << "inf";
    else
      os << b.y2;
  }
  return os.str();
}

std::size_t cell_of(const BoxPartition& P, UHPoint z) {
  const double x = z.real(), y = z.imag();
  for (std::size_t i = 0; i < P.boxes.size(); ++i) {
    const Box& b = P.boxes[i];
    if (x >= b.x1 && x < b.x2 && y >= b.y1 && y < b.y2) return i;
    // the right edge x = 1/2 belongs to the last box touching it
    if (b.x2 == 0.5 && x == 0.5 && y >= b.y1 && y < b.y2) return i;
  }
  return P.rest();
}

void JointCounts::merge(const JointCounts& o) {
  if (o.cells != cells || o.classes != classes) throw MathError("JointCounts shape mismatch");
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += o.w[i];
  total += o.total;
}

std::vector<double> JointCounts::class_marginal() const {
  std::vector<double> m(classes, 0.0);
  for (std::size_t c = 0; c < cells; ++c)
    for (std::size_t r = 0; r < classes; ++r) m[r] += w[c * classes + r];
  return m;
}

std::vector<double> JointCounts::cell_marginal() const {
  std::vector<double> m(cells, 0.0);
  for (std::size_t c = 0; c < cells; ++c)
    for (std::size_t r = 0; r < classes; ++r) m[c] += w[c * classes + r];
  return m;
}

double residue_uniformity(const std::vector<double>& counts) {
  if (counts.empty()) throw MathError("residue_uniformity: no classes");
  double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (!(total > 0)) throw MathError("residue_uniformity: empty sample");
  const double u = 1.0 / static_cast<double>(counts.size());
  double tv = 0;
  for (double c : counts) tv += std::abs(c / total - u);
  return tv / 2;
}

double chi_square_quantile(double prob, int dof) {
  if (dof < 1) throw MathError("chi-square needs at least one degree of freedom");
  boost::math::chi_squared_distribution<double> d(dof);
  return boost::math::quantile(d, prob);
}

ChiSquare joint_independence(const JointCounts& counts, const BoxPartition& P) {
  if (P.boxes.empty()) throw MathError("joint_independence: empty partition");
  if (counts.cells != P.cells()) throw MathError("joint_independence: shape mismatch");
  if (!(counts.total > 0)) throw MathError("joint_independence: empty sample");
  const std::vector<double> mass = cell_masses(P);
  const double N = counts.total;
  const std::size_t K = counts.classes;
  ChiSquare out;
  out.expected.resize(counts.w.size());
  out.residuals.resize(counts.w.size());
  for (std::size_t c = 0; c < counts.cells; ++c)
    for (std::size_t r = 0; r < K; ++r) {
      std::size_t i = c * K + r;
      out.expected[i] = N * mass[c] / static_cast<double>(K);
      double e = out.expected[i];
      out.residuals[i] = e > 0 ? (counts.w[i] - e) / std::sqrt(e) : 0.0;
    }
  // pool cells with expectation below 5; if the pool is still below 5 it
  // absorbs the smallest retained cell
  std::vector<std::size_t> big;
  double pooled_obs = 0, pooled_exp = 0;
  for (std::size_t i = 0; i < counts.w.size(); ++i) {
    if (out.expected[i] >= 5) {
      big.push_back(i);
    } else {
      pooled_obs += counts.w[i];
      pooled_exp += out.expected[i];
    }
  }
  if (pooled_exp > 0 && pooled_exp < 5 && !big.empty()) {
    auto it = std::min_element(big.begin(), big.end(), [&](std::size_t i, std::size_t j) {
      return out.expected[i] < out.expected[j];
    });
    pooled_obs += counts.w[*it];
    pooled_exp += out.expected[*it];
    big.erase(it);
  }
  double stat = 0;
  for (std::size_t i : big) {
    double d = counts.w[i] - out.expected[i];
    stat += d * d / out.expected[i];
  }
  std::size_t kept = big.size();
  if (pooled_exp >= 5) {
    double d = pooled_obs - pooled_exp;
    stat += d * d / pooled_exp;
    ++kept;
  }
  if (kept < 2) throw MathError("joint_independence: sample too small for the test");
  out.statistic = stat;
  out.cells_retained = kept;
  out.dof = static_cast<int>(kept) - 1;
  out.critical_99 = chi_square_quantile(0.99, out.dof);
  out.critical_999 = chi_square_quantile(0.999, out.dof);
  return out;
}

DukeReport duke_geodesic_report(i64 disc_min, i64 disc_max, const BoxPartition& P,
                                const DukeOptions& opt) {
  validate_partition(P);
  if (disc_min > disc_max) throw MathError("duke: empty discriminant range");
  if (!(opt.step > 0) || opt.repeat < 1) throw MathError("duke: bad sampling options");
  DukeReport rep;
  rep.disc_min = disc_min;
  rep.disc_max = disc_max;
  std::vector<double> cell_w(P.cells(), 0.0);
  for (i64 d = std::max<i64>(disc_min, 5); d <= disc_max; ++d) {
    if (!is_fundamental_discriminant(d)) continue;
    ++rep.discriminants;
    NarrowClassGroup G(d);
    const double L = geodesic_period(d);
    const std::size_t M = static_cast<std::size_t>(std::ceil(L / opt.step));
    for (const QForm& q : G.classes()) {
      ++rep.geodesics;
      GeodesicWalker walker(q);
      for (std::size_t k = 0; k < M; ++k) {
        double t = static_cast<double>(k) * L / static_cast<double>(M);
        FDReduction fd = reduce_to_fundamental_domain(walker.at(t).w);
        cell_w[cell_of(P, fd.z)] += opt.repeat;
        rep.samples += opt.repeat;
      }
    }
  }
  if (rep.discriminants == 0) throw MathError("duke: no fundamental discriminant in range");
  const std::vector<double> mass = cell_masses(P);
  for (std::size_t c = 0; c < P.cells(); ++c) {
    BoxRow row;
    row.rest = c == P.rest();
    if (!row.rest) row.box = P.boxes[c];
    row.observed = cell_w[c] / rep.samples;
    row.expected = mass[c];
    rep.tv += std::abs(row.observed - row.expected) / 2;
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<Order> inert_orders(i64 p, i64 disc_min, i64 disc_max) {
  std::vector<Order> out;
  for (i64 d = std::max<i64>(disc_min, 5); d <= disc_max; ++d) {
    i64 r = mod(d, 4);
    if ((r != 0 && r != 1) || is_square(d)) continue;
    Order o = order_from_discriminant(d);
    if (o.f % p == 0 || kronecker(o.field.dK, p) != -1) continue;
    out.push_back(o);
  }
  return out;
}

TheoremAReport theorem_a_report(i64 p, i64 disc_min, i64 disc_max, const BoxPartition& P,
                                double step) {
  validate_partition(P);
  if (!(step > 0)) throw MathError("theorem_a_report: step must be positive");
  TheoremAReport rep;
  rep.p = p;
  rep.disc_min = disc_min;
  rep.disc_max = disc_max;
  rep.step = step;
  const std::size_t K = static_cast<std::size_t>(residue_class_count(p));
  rep.raw = JointCounts(P.cells(), K);
  rep.class_freq_equal.assign(K, 0.0);
  for (const Order& o : inert_orders(p, disc_min, disc_max)) {
    std::vector<SHCycle> cycles = build_cycles(o.field, o.f, p);
    JointCounts local(P.cells(), K);
    OrderStats st;
    st.disc = o.discriminant();
    st.dK = o.field.dK;
    st.f = o.f;
    st.cycles = cycles.size();
    st.period = cycles.front().geodesic.period();
    const std::size_t M = static_cast<std::size_t>(std::ceil(st.period / step));
    for (const SHCycle& c : cycles) {
      for_each_canonical_point(c, M, [&](const CyclePoint& pt) {
        local.add(cell_of(P, pt.z), static_cast<std::size_t>(pt.residue));
        if (pt.boundary) ++rep.boundary_points;
      });
    }
    st.samples = local.total;
    std::vector<double> cm = local.class_marginal();
    st.tv = residue_uniformity(cm);
    for (std::size_t r = 0; r < K; ++r) rep.class_freq_equal[r] += cm[r] / local.total;
    rep.raw.merge(local);
    rep.orders.push_back(st);
  }
  if (rep.orders.empty()) throw MathError("theorem_a_report: no admissible order in range");
  for (double& x : rep.class_freq_equal) x /= static_cast<double>(rep.orders.size());
  rep.tv_equal = residue_uniformity(rep.class_freq_equal);
  rep.tv_raw = residue_uniformity(rep.raw.class_marginal());
  rep.chi = joint_independence(rep.raw, P);
  return rep;
}

}  // namespace shc
