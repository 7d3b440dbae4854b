#pragma once

// Empirical measures of canonical cycle points against the limit law:
// hyperbolic mass on boxes of the fundamental domain times the uniform law
// on the p^2 - p residue classes.

#include <string>
#include <vector>

#include "shc/hyperbolic.hpp"
#include "shc/sh_cycles.hpp"

namespace shc {

struct Box {
  double x1 = 0, x2 = 0, y1 = 1, y2 = 1;
};

/// Disjoint boxes inside {|x| <= 1/2, y >= 1}; the complement is the "rest"
/// cell with index boxes.size().
struct BoxPartition {
  std::vector<Box> boxes;
  std::size_t cells() const { return boxes.size() + 1; }
  std::size_t rest() const { return boxes.size(); }
};

/// (3/pi)(x2 - x1)(1/y1 - 1/y2). y2 may be +infinity.
double hyperbolic_box_mass(const Box& b);

/// Mass of every cell, rest last.
std::vector<double> cell_masses(const BoxPartition& P);

/// 3 x 2 grid: x in [-1/2,-1/6], [-1/6,1/6], [1/6,1/2]; y in [1,1.5], [1.5,3].
BoxPartition default_partition();
/// "default" or "x1:x2:y1:y2;..." (y2 may be "inf"). Validates the boxes.
BoxPartition parse_partition(const std::string& spec);
std::string format_partition(const BoxPartition& P);
void validate_partition(const BoxPartition& P);

std::size_t cell_of(const BoxPartition& P, UHPoint z);

/// Weighted counts on (cell x residue class), row-major by cell.
struct JointCounts {
  std::size_t cells = 0, classes = 0;
  std::vector<double> w;
  double total = 0;

  JointCounts() = default;
  JointCounts(std::size_t cells_, std::size_t classes_)
      : cells(cells_), classes(classes_), w(cells_ * classes_, 0.0) {}
  void add(std::size_t cell, std::size_t cls, double weight = 1.0) {
    w[cell * classes + cls] += weight;
    total += weight;
  }
  void merge(const JointCounts& o);
  std::vector<double> class_marginal() const;
  std::vector<double> cell_marginal() const;
};

/// (1/2) sum_r |freq(r) - 1/n|. Throws on an empty sample.
double residue_uniformity(const std::vector<double>& class_counts);

struct ChiSquare {
  double statistic = 0;
  int dof = 0;
  double critical_99 = 0;
  double critical_999 = 0;
  std::size_t cells_retained = 0;
  std::vector<double> expected;   // per original cell
  std::vector<double> residuals;  // (obs - exp) / sqrt(exp) per original cell
};

/// Chi-square of the (cell x class) table against N mass(cell) / (p^2 - p).
/// Cells with expectation below 5 are pooled; rejects samples too small to
/// leave two cells.
ChiSquare joint_independence(const JointCounts& counts, const BoxPartition& P);

/// Chi-square quantile with dof degrees of freedom.
double chi_square_quantile(double prob, int dof);

struct BoxRow {
  Box box;
  bool rest = false;
  double observed = 0;  // frequency
  double expected = 0;  // hyperbolic mass
};

struct DukeReport {
  i64 disc_min = 0, disc_max = 0;
  std::size_t discriminants = 0, geodesics = 0;
  double samples = 0;
  std::vector<BoxRow> rows;
  double tv = 0;  // over cells
  double deviation(std::size_t box) const {
    return rows[box].observed - rows[box].expected;
  }
};

struct DukeOptions {
  double step = 0.01;
  int repeat = 1;  // emit every sample this many times
};

/// Arc-length samples of every closed geodesic of each fundamental
/// discriminant in range, pooled with weight proportional to length.
DukeReport duke_geodesic_report(i64 disc_min, i64 disc_max, const BoxPartition& P,
                                const DukeOptions& opt = {});

struct OrderStats {
  i64 disc = 0, dK = 0, f = 0;
  std::size_t cycles = 0;
  double samples = 0;
  double period = 0;
  double tv = 0;
};

struct TheoremAReport {
  i64 p = 0, disc_min = 0, disc_max = 0;
  double step = 0.01;
  std::vector<OrderStats> orders;
  JointCounts raw;  // length weighted
  std::vector<double> class_freq_equal;  // equal weight per order
  double tv_equal = 0;
  double tv_raw = 0;
  std::size_t boundary_points = 0;
  ChiSquare chi;
};

/// Every order O_f with disc f^2 dK in range, p inert in K and p not dividing
/// f contributes its cycles' canonical points at arc-length spacing step.
TheoremAReport theorem_a_report(i64 p, i64 disc_min, i64 disc_max,
                                const BoxPartition& P, double step = 0.01);

/// Orders used by theorem_a_report.
std::vector<Order> inert_orders(i64 p, i64 disc_min, i64 disc_max);

}  // namespace shc
