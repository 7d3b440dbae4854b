#pragma once

// Experiment configuration and the mode runners behind the shlab tool.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace shlab {

inline constexpr int kSchemaVersion = 1;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AtrSpec {
  long long D = 5;
  long long delta_a = 0, delta_b = 0;  // delta = a + b sqrt(D)
  long long f_a = 1, f_b = 0;          // f = a + b sqrt(D)
};

struct ExperimentConfig {
  std::string mode;
  long long dk = 5;
  long long f = 1;
  long long p = 3;
  long long disc_min = 100;
  long long disc_max = 200;
  double step = 0.01;
  long precision = 40;
  std::string boxes = "default";
  std::string out = "shlab_out";
  long long samples = 100;
  long long bound = 0;  // 0: automatic
  int tree_radius = 2;
  std::vector<AtrSpec> atr;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

/// Default ATR extensions over Q(sqrt 5).
std::vector<AtrSpec> default_atr_specs();

void validate(const ExperimentConfig& c);

/// Runs one mode, writing artifacts under c.out and a report to `report`.
void run(const ExperimentConfig& c, std::ostream& report);

/// Maps library exceptions to exit codes; 0 on success.
int run_guarded(const ExperimentConfig& c, std::ostream& report, std::ostream& err);

}  // namespace shlab
