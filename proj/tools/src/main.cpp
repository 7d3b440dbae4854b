#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"shlab: Stark-Heegner cycle experiments"};
  shlab::ExperimentConfig c;
  c.atr = shlab::default_atr_specs();
  std::string config_path;
  app.add_option("--config", config_path, "JSON config; flags given on the command line override it");
  app.add_option("--mode", c.mode, "classgroup | embeddings | sh-cycles | duke | atr | stats");
  app.add_option("--dk", c.dk, "fundamental discriminant of K");
  app.add_option("--f", c.f, "conductor");
  app.add_option("--p", c.p, "prime");
  app.add_option("--disc-min", c.disc_min, "smallest discriminant (duke, stats)");
  app.add_option("--disc-max", c.disc_max, "largest discriminant (duke, stats)");
  app.add_option("--step", c.step, "arc-length sample step");
  app.add_option("--precision", c.precision, "p-adic precision N");
  app.add_option("--boxes", c.boxes, "'default' or x1:x2:y1:y2;...");
  app.add_option("--out", c.out, "output directory");
  app.add_option("--samples", c.samples, "points per cycle (sh-cycles)");
  app.add_option("--bound", c.bound, "search bound, 0 for automatic");
  app.add_option("--tree-radius", c.tree_radius, "radius of the tree neighbourhood written as DOT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (!config_path.empty()) {
    try {
      std::ifstream is(config_path);
      if (!is) throw shlab::ConfigError("cannot read " + config_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(is);
      } catch (const nlohmann::json::exception& e) {
        throw shlab::ConfigError(std::string("malformed config: ") + e.what());
      }
      shlab::ExperimentConfig base = shlab::ExperimentConfig::from_json(j);
      // command-line flags win over the file
      auto keep = [&](const char* flag, auto& dst, const auto& src) {
        if (app.count(flag) == 0) dst = src;
      };
      keep("--mode", c.mode, base.mode);
      keep("--dk", c.dk, base.dk);
      keep("--f", c.f, base.f);
      keep("--p", c.p, base.p);
      keep("--disc-min", c.disc_min, base.disc_min);
      keep("--disc-max", c.disc_max, base.disc_max);
      keep("--step", c.step, base.step);
      keep("--precision", c.precision, base.precision);
      keep("--boxes", c.boxes, base.boxes);
      keep("--out", c.out, base.out);
      keep("--samples", c.samples, base.samples);
      keep("--bound", c.bound, base.bound);
      keep("--tree-radius", c.tree_radius, base.tree_radius);
      c.atr = base.atr;
    } catch (const shlab::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 1;
    }
  }
  return shlab::run_guarded(c, std::cout, std::cerr);
}
