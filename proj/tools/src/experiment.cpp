#include "experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "shc/atr_cycles.hpp"
#include "shc/equidist_stats.hpp"
#include "shc/errors.hpp"

namespace shlab {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* const kModes[] = {"classgroup", "embeddings", "sh-cycles",
                              "duke", "atr", "stats"};

std::string fx(double v, int digits = 12) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::ofstream open_csv(const fs::path& path, const std::string& header) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  os << "#schema_version=" << kSchemaVersion << "\n" << header << "\n";
  return os;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  os << j.dump(2) << "\n";
}

json form_json(const shc::QForm& q) { return json::array({q.a, q.b, q.c}); }

shc::QuadElement zf_from(const shc::BaseField& F, long long a, long long b) {
  // a + b sqrt(D) = (2a + 2b sqrt(D)) / 2 over dK_F; sqrt(D) = sqrt(dK)/2 if dK = 4D
  const long long D = F.F.D;
  mpq_class x(static_cast<long>(2 * a)), y(static_cast<long>(F.F.dK == D ? 2 * b : b));
  return {F.F.dK, x, y};
}

void run_classgroup(const ExperimentConfig& c, std::ostream& rep) {
  shc::QuadField k = shc::field_from_discriminant(c.dk);
  shc::Order o = shc::make_order(k, c.f);
  shc::NarrowClassGroup G(o.discriminant());
  json j;
  j["schema_version"] = kSchemaVersion;
  j["disc"] = o.discriminant();
  j["dk"] = c.dk;
  j["f"] = c.f;
  j["order"] = G.order();
  j["identity"] = G.identity();
  json cls = json::array();
  for (std::size_t i = 0; i < G.order(); ++i)
    cls.push_back({{"id", i}, {"form", form_json(G.classes()[i])},
                   {"cycle_length", G.cycles()[i].size()}});
  j["classes"] = cls;
  json table = json::array();
  for (std::size_t i = 0; i < G.order(); ++i) {
    json row = json::array();
    for (std::size_t m = 0; m < G.order(); ++m) row.push_back(G.multiply(i, m));
    table.push_back(row);
  }
  j["table"] = table;
  write_json(fs::path(c.out) / "classgroup.json", j);
  rep << "narrow class group of discriminant " << o.discriminant() << ": order "
      << G.order() << "\n";
  for (std::size_t i = 0; i < G.order(); ++i)
    rep << "  class " << i << "  " << G.classes()[i] << "\n";
}

void run_embeddings(const ExperimentConfig& c, std::ostream& rep) {
  shc::QuadField k = shc::field_from_discriminant(c.dk);
  shc::Order o = shc::make_order(k, c.f);
  const shc::i64 disc = o.discriminant();
  shc::NarrowClassGroup G(disc);
  std::ofstream csv = open_csv(fs::path(c.out) / "embeddings.csv",
                               "class_id,a,b,c,w11,w12,w21,w22,tau,tau_prime,optimal");
  for (std::size_t i = 0; i < G.order(); ++i) {
    const shc::QForm& q = G.classes()[i];
    shc::Embedding e = shc::embedding_from_form(q, k, c.f);
    shc::GeodesicArc g(q, 0.0);
    bool opt = shc::is_optimal(e, o).optimal;
    csv << i << ',' << q.a << ',' << q.b << ',' << q.c << ',' << e.W.a << ',' << e.W.b
        << ',' << e.W.c << ',' << e.W.d << ',' << fx(g.tau()) << ',' << fx(g.tau_prime())
        << ',' << (opt ? 1 : 0) << "\n";
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["disc"] = disc;
  j["order"] = G.order();
  // regularity of the star action on the class representatives
  shc::Embedding base = shc::embedding_from_form(G.classes()[G.identity()], k, c.f);
  bool regular = true;
  for (std::size_t s = 0; s < G.order(); ++s) {
    std::vector<int> hit(G.order(), 0);
    shc::Embedding es = shc::embedding_from_form(G.classes()[s], k, c.f);
    for (std::size_t t = 0; t < G.order(); ++t)
      ++hit[G.class_of(shc::form_of(shc::star_action(G.classes()[t], es)))];
    for (int h : hit) regular = regular && h == 1;
  }
  (void)base;
  j["star_action_regular"] = regular;
  if (disc < 10000) {
    shc::i64 bound = c.bound > 0 ? c.bound : 2 * shc::isqrt(disc) + 2;
    shc::BruteForceClasses bf = shc::enumerate_classes_bruteforce(disc, bound, 1 << 20);
    j["bruteforce"] = {{"bound", bound},
                       {"classes", bf.classes.size()},
                       {"embeddings", bf.embeddings},
                       {"certificate_components", bf.certificate_components},
                       {"certificate_sound", bf.certificate_sound}};
    rep << "brute force: " << bf.classes.size() << " classes from " << bf.embeddings
        << " optimal embeddings (bound " << bound << ")\n";
  }
  write_json(fs::path(c.out) / "embeddings.json", j);
  rep << "optimal embeddings of discriminant " << disc << ": " << G.order()
      << " classes, star action " << (regular ? "regular" : "NOT regular") << "\n";
}

void run_sh_cycles(const ExperimentConfig& c, std::ostream& rep) {
  shc::QuadField k = shc::field_from_discriminant(c.dk);
  std::vector<shc::SHCycle> cycles = shc::build_cycles(k, c.f, c.p, c.precision);
  std::ofstream csv = open_csv(fs::path(c.out) / "sh_cycles.csv",
                               "disc,f,p,class_id,t_index,re_z,im_z,residue,boundary");
  const shc::i64 disc = c.f * c.f * k.dK;
  json cyc = json::array();
  std::vector<double> counts(static_cast<std::size_t>(shc::residue_class_count(c.p)), 0.0);
  for (const shc::SHCycle& s : cycles) {
    shc::for_each_canonical_point(s, static_cast<std::size_t>(c.samples),
                                  [&](const shc::CyclePoint& pt) {
      csv << disc << ',' << c.f << ',' << c.p << ',' << s.class_id << ',' << pt.t_index
          << ',' << fx(pt.z.real()) << ',' << fx(pt.z.imag()) << ',' << pt.residue << ','
          << (pt.boundary ? 1 : 0) << "\n";
      counts[static_cast<std::size_t>(pt.residue)] += 1;
    });
    cyc.push_back({{"class_id", s.class_id},
                   {"form", form_json(shc::form_of(s.embedding))},
                   {"tau_p_mod_p", {s.tau_p.x().mod_pk(1).get_si(), s.tau_p.y().mod_pk(1).get_si()}}});
  }
  std::ofstream dot(fs::path(c.out) / "tree.dot", std::ios::binary);
  dot << shc::neighborhood_dot(c.p, c.tree_radius);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["disc"] = disc;
  j["disc_p"] = shc::disc_p(disc, c.p);
  j["toral_discriminant"] = shc::toral_discriminant(k, c.f).get_str();
  j["cycles"] = cycles.size();
  j["period"] = fx(cycles.front().geodesic.period());
  j["samples_per_cycle"] = c.samples;
  j["residue_tv"] = fx(shc::residue_uniformity(counts));
  j["cycle_list"] = cyc;
  write_json(fs::path(c.out) / "sh_cycles.json", j);
  rep << cycles.size() << " Stark-Heegner cycles for disc " << disc << ", p = " << c.p
      << ", period " << fx(cycles.front().geodesic.period(), 6) << "\n"
      << "residue TV over " << counts.size() << " classes: "
      << fx(shc::residue_uniformity(counts), 6) << "\n";
}

void run_duke(const ExperimentConfig& c, std::ostream& rep) {
  shc::BoxPartition P = shc::parse_partition(c.boxes);
  shc::DukeReport r = shc::duke_geodesic_report(c.disc_min, c.disc_max, P, {c.step, 1});
  std::ofstream csv = open_csv(fs::path(c.out) / "duke_cells.csv",
                               "cell,kind,x1,x2,y1,y2,observed,expected,deviation");
  json boxes = json::array();
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const shc::BoxRow& row = r.rows[i];
    csv << i << ',' << (row.rest ? "rest" : "box") << ',';
    if (row.rest)
      csv << ",,,";
    else
      csv << fx(row.box.x1) << ',' << fx(row.box.x2) << ',' << fx(row.box.y1) << ','
          << fx(row.box.y2);
    csv << ',' << fx(row.observed) << ',' << fx(row.expected) << ','
        << fx(row.observed - row.expected) << "\n";
    boxes.push_back({{"cell", i},
                     {"rest", row.rest},
                     {"observed", fx(row.observed)},
                     {"expected", fx(row.expected)},
                     {"abs_deviation", fx(std::abs(row.observed - row.expected))}});
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["disc_min"] = c.disc_min;
  j["disc_max"] = c.disc_max;
  j["step"] = c.step;
  j["discriminants"] = r.discriminants;
  j["geodesics"] = r.geodesics;
  j["samples"] = static_cast<long long>(r.samples);
  j["tv"] = fx(r.tv);
  j["boxes"] = boxes;
  write_json(fs::path(c.out) / "duke_summary.json", j);
  rep << "Duke statistic over fundamental discriminants [" << c.disc_min << ", "
      << c.disc_max << "]: " << r.discriminants << " discriminants, " << r.geodesics
      << " geodesics, " << static_cast<long long>(r.samples) << " samples\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    rep << "  cell " << i << (r.rows[i].rest ? " (rest)" : "") << "  observed "
        << fx(r.rows[i].observed, 6) << "  expected " << fx(r.rows[i].expected, 6) << "\n";
  rep << "TV " << fx(r.tv, 6) << "\n";
}

void run_stats(const ExperimentConfig& c, std::ostream& rep) {
  shc::BoxPartition P = shc::parse_partition(c.boxes);
  shc::TheoremAReport r = shc::theorem_a_report(c.p, c.disc_min, c.disc_max, P, c.step);
  std::ofstream cells = open_csv(fs::path(c.out) / "stats_cells.csv",
                                 "cell,class,observed,expected,residual");
  for (std::size_t cell = 0; cell < r.raw.cells; ++cell)
    for (std::size_t cls = 0; cls < r.raw.classes; ++cls) {
      std::size_t i = cell * r.raw.classes + cls;
      cells << cell << ',' << cls << ',' << fx(r.raw.w[i], 1) << ','
            << fx(r.chi.expected[i], 6) << ',' << fx(r.chi.residuals[i], 6) << "\n";
    }
  std::ofstream orders = open_csv(fs::path(c.out) / "stats_orders.csv",
                                  "disc,dk,f,cycles,samples,period,tv");
  for (const shc::OrderStats& o : r.orders)
    orders << o.disc << ',' << o.dK << ',' << o.f << ',' << o.cycles << ','
           << static_cast<long long>(o.samples) << ',' << fx(o.period) << ',' << fx(o.tv)
           << "\n";
  json j;
  j["schema_version"] = kSchemaVersion;
  j["p"] = c.p;
  j["disc_min"] = c.disc_min;
  j["disc_max"] = c.disc_max;
  j["step"] = c.step;
  j["orders"] = r.orders.size();
  j["samples"] = static_cast<long long>(r.raw.total);
  j["boundary_points"] = r.boundary_points;
  j["tv_equal_weight"] = fx(r.tv_equal);
  j["tv_length_weight"] = fx(r.tv_raw);
  j["chi_square"] = {{"statistic", fx(r.chi.statistic, 4)},
                     {"dof", r.chi.dof},
                     {"critical_99", fx(r.chi.critical_99, 4)},
                     {"critical_999", fx(r.chi.critical_999, 4)},
                     {"cells_retained", r.chi.cells_retained}};
  j["pooling"] = "equal weight per order for tv_equal_weight; raw counts elsewhere";
  write_json(fs::path(c.out) / "stats_summary.json", j);
  rep << "Stark-Heegner statistic, p = " << c.p << ", disc_p in [" << c.disc_min << ", "
      << c.disc_max << "]: " << r.orders.size() << " orders, "
      << static_cast<long long>(r.raw.total) << " samples\n"
      << "residue TV (equal weight per order) " << fx(r.tv_equal, 6)
      << ", (length weight) " << fx(r.tv_raw, 6) << "\n"
      << "chi-square " << fx(r.chi.statistic, 2) << " on " << r.chi.dof
      << " dof, 99.9% point " << fx(r.chi.critical_999, 2) << "\n";
}

void run_atr(const ExperimentConfig& c, std::ostream& rep) {
  std::ofstream csv = open_csv(
      fs::path(c.out) / "atr.csv",
      "D,delta_a,delta_b,f_a,f_b,dk_x,dk_y,tau0_re,tau0_im,end_lo,end_hi,rho,disc_norm,toral");
  json list = json::array();
  const long long bound = c.bound > 0 ? c.bound : 200;
  for (const AtrSpec& s : c.atr) {
    shc::BaseField F = shc::make_base_field(s.D);
    shc::QuadElement delta = zf_from(F, s.delta_a, s.delta_b);
    shc::QuadElement f = zf_from(F, s.f_a, s.f_b);
    shc::ATRExtension ext = shc::make_atr_extension(F, delta, f);
    shc::ATRCycle cyc = shc::atr_cycle_from_form(shc::principal_rel_form(ext), ext);
    shc::StabilizerUnit u = shc::unit_stabilizer_search(ext, bound);
    shc::ATRDiscriminant d = shc::atr_discriminant_norm(ext);
    std::ostringstream dkx, dky;
    dkx << ext.dK.x();
    dky << ext.dK.y();
    csv << s.D << ',' << s.delta_a << ',' << s.delta_b << ',' << s.f_a << ',' << s.f_b << ','
        << dkx.str() << ',' << dky.str() << ',' << fx(cyc.tau0.real()) << ','
        << fx(cyc.tau0.imag()) << ',' << fx(cyc.end_lo) << ',' << fx(cyc.end_hi) << ','
        << fx(u.rho) << ',' << d.norm.get_str() << ',' << d.toral.get_str() << "\n";
    std::ostringstream ux, uy;
    ux << u.x;
    uy << u.y;
    list.push_back({{"D", s.D},
                    {"delta", {s.delta_a, s.delta_b}},
                    {"f", {s.f_a, s.f_b}},
                    {"unit_x", ux.str()},
                    {"unit_y", uy.str()},
                    {"rho", fx(u.rho)},
                    {"box_solutions", u.box_solutions},
                    {"all_powers", u.all_powers},
                    {"disc_norm", d.norm.get_str()},
                    {"toral", d.toral.get_str()}});
    rep << "ATR F=Q(sqrt " << s.D << "), delta = " << s.delta_a << " + " << s.delta_b
        << " sqrt" << s.D << ": |N(f^2 dK)| = " << d.norm.get_str() << ", unit rho "
        << fx(u.rho, 6) << "\n";
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["extensions"] = list;
  write_json(fs::path(c.out) / "atr.json", j);
}

}  // namespace

std::vector<AtrSpec> default_atr_specs() {
  return {{5, 1, -3, 1, 0}, {5, 3, -2, 1, 0}, {5, 1, -1, 1, 0}, {5, 2, -1, 1, 0}};
}

json ExperimentConfig::to_json() const {
  json atr_list = json::array();
  for (const AtrSpec& s : atr)
    atr_list.push_back({{"D", s.D}, {"delta", {s.delta_a, s.delta_b}}, {"f", {s.f_a, s.f_b}}});
  return {{"mode", mode},         {"dk", dk},           {"f", f},
          {"p", p},               {"disc_min", disc_min}, {"disc_max", disc_max},
          {"step", step},         {"precision", precision}, {"boxes", boxes},
          {"out", out},           {"samples", samples}, {"bound", bound},
          {"tree_radius", tree_radius}, {"atr", atr_list}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  c.atr = default_atr_specs();
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      if (key == "mode") c.mode = it->get<std::string>();
      else if (key == "dk") c.dk = it->get<long long>();
      else if (key == "f") c.f = it->get<long long>();
      else if (key == "p") c.p = it->get<long long>();
      else if (key == "disc_min") c.disc_min = it->get<long long>();
      else if (key == "disc_max") c.disc_max = it->get<long long>();
      else if (key == "step") c.step = it->get<double>();
      else if (key == "precision") c.precision = it->get<long>();
      else if (key == "boxes") c.boxes = it->get<std::string>();
      else if (key == "out") c.out = it->get<std::string>();
      else if (key == "samples") c.samples = it->get<long long>();
      else if (key == "bound") c.bound = it->get<long long>();
      else if (key == "tree_radius") c.tree_radius = it->get<int>();
      else if (key == "atr") {
        c.atr.clear();
        for (const json& e : *it) {
          AtrSpec s;
          s.D = e.at("D").get<long long>();
          s.delta_a = e.at("delta").at(0).get<long long>();
          s.delta_b = e.at("delta").at(1).get<long long>();
          if (e.contains("f")) {
            s.f_a = e.at("f").at(0).get<long long>();
            s.f_b = e.at("f").at(1).get<long long>();
          }
          c.atr.push_back(s);
        }
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  bool known = false;
  for (const char* m : kModes) known = known || c.mode == m;
  if (!known) throw ConfigError("unknown mode '" + c.mode + "'");
  if (c.f < 1) throw ConfigError("f must be positive");
  if (c.p < 2) throw ConfigError("p must be a prime");
  if (c.disc_min > c.disc_max) throw ConfigError("disc-min exceeds disc-max");
  if (!(c.step > 0)) throw ConfigError("step must be positive");
  if (c.precision < 2) throw ConfigError("precision must be at least 2");
  if (c.samples < 1) throw ConfigError("samples must be positive");
  if (c.tree_radius < 0 || c.tree_radius > 8) throw ConfigError("tree radius out of range");
  if (c.out.empty()) throw ConfigError("output directory missing");
  try {
    shc::parse_partition(c.boxes);
  } catch (const shc::MathError& e) {
    throw ConfigError(std::string("bad --boxes: ") + e.what());
  }
}

void run(const ExperimentConfig& c, std::ostream& report) {
  validate(c);
  fs::create_directories(c.out);
  if (c.mode == "classgroup") run_classgroup(c, report);
  else if (c.mode == "embeddings") run_embeddings(c, report);
  else if (c.mode == "sh-cycles") run_sh_cycles(c, report);
  else if (c.mode == "duke") run_duke(c, report);
  else if (c.mode == "stats") run_stats(c, report);
  else if (c.mode == "atr") run_atr(c, report);
  write_json(fs::path(c.out) / "config.json", c.to_json());
}

int run_guarded(const ExperimentConfig& c, std::ostream& report, std::ostream& err) {
  try {
    run(c, report);
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const fs::filesystem_error& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const shc::PrecisionError& e) {
    err << "precision exhausted: " << e.what() << "\n";
    return 3;
  } catch (const shc::BoundExhausted& e) {
    err << "search bound exhausted: " << e.what() << "\n";
    return 4;
  } catch (const shc::MathError& e) {
    err << "math precondition violated: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace shlab
