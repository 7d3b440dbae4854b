#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "experiment.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("shlab_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(SHLAB_EXE) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::vector<std::string> out;
  std::ifstream is(p);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::size_t columns(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

}  // namespace

TEST(Cli, ClassGroupJson) {
  fs::path out = scratch("classgroup");
  ASSERT_EQ(run_cli("--mode classgroup --dk 12 --out " + out.string()), 0);
  json j = json::parse(slurp(out / "classgroup.json"));
  EXPECT_EQ(j["order"], 2);
  EXPECT_EQ(j["classes"].size(), 2u);
  EXPECT_EQ(j["classes"][0]["form"], json::array({1, 2, -2}));
  EXPECT_EQ(j["schema_version"], shlab::kSchemaVersion);
}

TEST(Cli, ShCyclesCsvShape) {
  fs::path out = scratch("sh");
  ASSERT_EQ(run_cli("--mode sh-cycles --dk 5 --f 1 --p 3 --samples 100 --out " + out.string()), 0);
  auto ls = lines(out / "sh_cycles.csv");
  ASSERT_EQ(ls.size(), 102u);
  EXPECT_EQ(ls[0], "#schema_version=1");
  EXPECT_EQ(ls[1], "disc,f,p,class_id,t_index,re_z,im_z,residue,boundary");
  for (std::size_t i = 2; i < ls.size(); ++i) {
    EXPECT_EQ(columns(ls[i]), 9u);
    std::stringstream ss(ls[i]);
    std::string cell;
    std::vector<std::string> v;
    while (std::getline(ss, cell, ',')) v.push_back(cell);
    int r = std::stoi(v[7]);
    EXPECT_GE(r, 0);
    EXPECT_LT(r, 6);
    EXPECT_EQ(v[6].size() - v[6].find('.') - 1, 12u);  // fixed 12 decimals
  }
  std::string dot = slurp(out / "tree.dot");
  EXPECT_EQ(dot.rfind("graph ", 0), 0u);
}

TEST(Cli, DukeOutputs) {
  fs::path out = scratch("duke");
  ASSERT_EQ(run_cli("--mode duke --disc-min 100 --disc-max 200 --out " + out.string()), 0);
  auto ls = lines(out / "duke_cells.csv");
  EXPECT_EQ(ls[0], "#schema_version=1");
  EXPECT_EQ(ls[1], "cell,kind,x1,x2,y1,y2,observed,expected,deviation");
  EXPECT_EQ(ls.size(), 2u + 7u);
  for (std::size_t i = 2; i < ls.size(); ++i) EXPECT_EQ(columns(ls[i]), 9u);
  json j = json::parse(slurp(out / "duke_summary.json"));
  EXPECT_EQ(j["boxes"].size(), 7u);
  EXPECT_TRUE(j.contains("tv"));
  EXPECT_TRUE(j["boxes"][0].contains("abs_deviation"));
}

TEST(Cli, StatsAndOtherModes) {
  fs::path out = scratch("stats");
  ASSERT_EQ(run_cli("--mode stats --p 3 --disc-min 100 --disc-max 300 --out " + out.string()), 0);
  auto cells = lines(out / "stats_cells.csv");
  EXPECT_EQ(cells[1], "cell,class,observed,expected,residual");
  EXPECT_EQ(cells.size(), 2u + 7u * 6u);
  auto orders = lines(out / "stats_orders.csv");
  EXPECT_EQ(orders[1], "disc,dk,f,cycles,samples,period,tv");
  json j = json::parse(slurp(out / "stats_summary.json"));
  EXPECT_EQ(j["chi_square"]["dof"].get<int>() + 1, j["chi_square"]["cells_retained"].get<int>());
  EXPECT_EQ(run_cli("--mode embeddings --dk 5 --f 3 --out " + out.string()), 0);
  json e = json::parse(slurp(out / "embeddings.json"));
  EXPECT_EQ(e["order"], 2);
  EXPECT_EQ(e["bruteforce"]["classes"], 2);
  EXPECT_TRUE(e["star_action_regular"].get<bool>());
  EXPECT_EQ(run_cli("--mode atr --out " + out.string()), 0);
  EXPECT_EQ(lines(out / "atr.csv").size(), 2u + 4u);
}

TEST(Cli, ExitCodes) {
  fs::path out = scratch("codes");
  std::string o = " --out " + out.string();
  EXPECT_EQ(run_cli("--mode bogus" + o), 1);
  EXPECT_EQ(run_cli("--mode duke --disc-min 300 --disc-max 100" + o), 1);
  EXPECT_EQ(run_cli("--mode duke --boxes 0:0.7:1:2" + o), 1);
  EXPECT_EQ(run_cli("--mode classgroup --unknown-flag 3" + o), 1);
  EXPECT_EQ(run_cli("--mode classgroup --config /nonexistent/cfg.json" + o), 1);
  EXPECT_EQ(run_cli("--mode sh-cycles --dk 5 --p 11" + o), 2);   // split
  EXPECT_EQ(run_cli("--mode sh-cycles --dk 12 --p 3" + o), 2);   // ramified
  EXPECT_EQ(run_cli("--mode classgroup --dk 20" + o), 2);        // not fundamental
  EXPECT_EQ(run_cli("--mode embeddings --dk 5 --bound 2" + o), 4);
  EXPECT_EQ(run_cli("--mode classgroup --dk 5" + o), 0);
}

TEST(Cli, BoundExhaustionInProcess) {
  shlab::ExperimentConfig c;
  c.mode = "atr";
  c.atr = {{5, 1, -3, 1, 0}};
  c.bound = 1;  // the unit of 1 - 3 sqrt 5 has height far above 1
  c.out = scratch("bound").string();
  std::ostringstream rep, err;
  EXPECT_EQ(shlab::run_guarded(c, rep, err), 4);
  EXPECT_NE(err.str().find("bound"), std::string::npos);
}

TEST(Cli, ConfigFileRoundTrip) {
  fs::path out = scratch("cfg");
  fs::create_directories(out);
  shlab::ExperimentConfig c;
  c.mode = "sh-cycles";
  c.dk = 12;
  c.p = 5;
  c.samples = 7;
  c.atr = shlab::default_atr_specs();
  c.out = (out / "run").string();
  json j = c.to_json();
  EXPECT_EQ(shlab::ExperimentConfig::from_json(j).to_json(), j);
  {
    std::ofstream os(out / "cfg.json");
    os << j.dump(2);
  }
  ASSERT_EQ(run_cli("--config " + (out / "cfg.json").string()), 0);
  EXPECT_EQ(lines(out / "run" / "sh_cycles.csv").size(), 2u + 2u * 7u);
  // flags override the file
  ASSERT_EQ(run_cli("--config " + (out / "cfg.json").string() + " --samples 3"), 0);
  EXPECT_EQ(lines(out / "run" / "sh_cycles.csv").size(), 2u + 2u * 3u);
  json bad = j;
  bad["typo_key"] = 1;
  {
    std::ofstream os(out / "bad.json");
    os << bad.dump();
  }
  EXPECT_EQ(run_cli("--config " + (out / "bad.json").string()), 1);
  {
    std::ofstream os(out / "broken.json");
    os << "{ not json";
  }
  EXPECT_EQ(run_cli("--config " + (out / "broken.json").string()), 1);
}

TEST(Cli, Deterministic) {
  fs::path a = scratch("det_a"), b = scratch("det_b");
  for (const std::string& mode : {std::string("sh-cycles --dk 13 --p 5 --samples 300"),
                                  std::string("stats --disc-min 100 --disc-max 300"),
                                  std::string("duke --disc-min 100 --disc-max 200")}) {
    ASSERT_EQ(run_cli("--mode " + mode + " --out " + a.string()), 0);
    ASSERT_EQ(run_cli("--mode " + mode + " --out " + b.string()), 0);
  }
  for (const char* f : {"sh_cycles.csv", "stats_cells.csv", "stats_orders.csv", "duke_cells.csv",
                        "duke_summary.json", "stats_summary.json"})
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}
