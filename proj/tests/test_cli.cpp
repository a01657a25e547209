#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "levyreflect/error.hpp"
#include "levyreflect_cli/config.hpp"
#include "levyreflect_cli/runner.hpp"

using namespace levyreflect;
using namespace levyreflect::cli;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "levyreflect_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "levyreflect");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  auto cfg = parse_command_line(static_cast<int>(argv.size()), argv.data());
  if (!cfg) throw std::runtime_error("help requested");
  return *cfg;
}

int entry(std::vector<std::string> args, std::string* err_text = nullptr) {
  args.insert(args.begin(), "levyreflect");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (err_text) *err_text = err.str();
  return code;
}

// Data rows of a CSV (lines not starting with '#'), header included.
std::vector<std::string> rows(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  return out;
}

}  // namespace

TEST(ParseModel, Grammar) {
  const auto a = parse_model("cp:3,exp:1,-1");
  ASSERT_TRUE(a.is_compound_poisson_only());
  EXPECT_EQ(a.cp()->intensity, 3.0);
  EXPECT_EQ(a.cp()->jump.rate(), 1.0);
  EXPECT_EQ(a.cp()->drift, -1.0);
  const auto g = parse_model("cp:0.5,gamma:2,3,-0.2");
  EXPECT_EQ(g.cp()->jump.family(), JumpFamily::Gamma);
  EXPECT_EQ(g.cp()->jump.shape(), 2);
  EXPECT_EQ(g.cp()->jump.rate(), 3.0);
  EXPECT_EQ(g.cp()->drift, -0.2);
  const auto u = parse_model("cp:1,unit,0");
  EXPECT_EQ(u.cp()->jump.family(), JumpFamily::Unit);
  const auto b = parse_model("bm:1,2");
  ASSERT_TRUE(b.bm());
  EXPECT_EQ(b.bm()->volatility, 2.0);
  const auto s = parse_model("sum(cp:1,exp:2,-1,bm:0.5,1)");
  ASSERT_TRUE(s.cp() && s.bm());
  EXPECT_EQ(s.bm()->drift, 0.5);
  EXPECT_EQ(s.cp()->jump.rate(), 2.0);
}

TEST(ParseModel, Rejects) {
  for (const char* bad : {"", "cp:3", "cp:3,exp:1", "cp:3,exp:x,-1", "cp:3,weird:1,-1", "cp:3,gamma:1.5,1,-1",
                          "bm:1", "bm:1,2,3", "sum(bm:1,1)", "levy:1"}) {
    EXPECT_THROW(parse_model(bad), ConfigError) << bad;
  }
}

TEST(CommandLine, FlagsAndDefaults) {
  const auto cfg = parse({"clt", "--model", "cp:3,exp:1,-1", "--barrier", "zero", "--u", "50,200,800", "--n", "100",
                          "--seed", "7", "--workers", "4"});
  EXPECT_EQ(cfg.subcommand, Subcommand::Clt);
  EXPECT_EQ(cfg.levels, (std::vector<double>{50, 200, 800}));
  EXPECT_EQ(cfg.replications, 100u);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.seed_source, "flag");
  EXPECT_EQ(cfg.workers, 4u);
  EXPECT_EQ(cfg.c, 0.5);
  EXPECT_FALSE(cfg.tilt);
}

TEST(CommandLine, BadValuesNameTheFlag) {
  try {
    parse({"passage", "--c", "1.5"});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("--c"), std::string::npos);
  }
  EXPECT_THROW(parse({"passage", "--n", "-3"}), ConfigError);
  EXPECT_THROW(parse({"passage", "--barrier", "power:0.2"}), ConfigError);
  EXPECT_THROW(parse({"nosuch"}), ConfigError);
  EXPECT_THROW(parse({"clt", "--unknown", "1"}), ConfigError);
}

TEST(ConfigFile, SectionsAndPrecedence) {
  const auto path = scratch_dir() / "run.ini";
  {
    std::ofstream f(path);
    f << "# experiment\nseed = 9\nn = 50\nmodel = cp:3,exp:1,-1\n[clt]\nn = 500\nu = 25, 100\n[rate]\nn = 3\n";
  }
  ::setenv("LEVY_REFLECT_SEED", "4", 1);
  auto cfg = parse({"clt", "--config", path.string(), "--u", "60"});
  EXPECT_EQ(cfg.replications, 500u);
  EXPECT_EQ(cfg.levels, std::vector<double>{60});
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.seed_source, "config");
  cfg = parse({"rate", "--config", path.string()});
  EXPECT_EQ(cfg.replications, 3u);
  cfg = parse({"asym"});
  EXPECT_EQ(cfg.seed, 4u);
  EXPECT_EQ(cfg.seed_source, "env");
  ::unsetenv("LEVY_REFLECT_SEED");
  cfg = parse({"asym"});
  EXPECT_EQ(cfg.seed, 0u);
  EXPECT_EQ(cfg.seed_source, "default");
}

TEST(ConfigFile, ErrorsCarryLineOrKey) {
  const auto path = scratch_dir() / "bad.ini";
  {
    std::ofstream f(path);
    f << "seed = 1\n[clt]\nthis line has no equals\n";
  }
  try {
    parse({"clt", "--config", path.string()});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("(3)"), std::string::npos) << e.what();
  }
  {
    std::ofstream f(path);
    f << "[clt]\nreplicas = 4\n";
  }
  try {
    parse({"clt", "--config", path.string()});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("replicas"), std::string::npos);
  }
  {
    std::ofstream f(path);
    f << "[other]\nn = 4\n";
  }
  EXPECT_THROW(parse({"clt", "--config", path.string()}), ConfigError);
}

TEST(Execute, AsymExample) {
  const auto cfg = parse({"asym", "--model", "cp:1,exp:1,-1", "--barrier", "linear:1", "--u", "10", "--c", "0.5"});
  const auto out = execute(cfg);
  const auto r = rows(out.summary_csv);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], "u,c,n,estimate,ci95,theory,ratio");
  const auto f = fields(r[1]);
  EXPECT_NEAR(std::stod(f[3]), 6.6702e-3, 1e-7);
  EXPECT_NEAR(std::stod(f[5]), 6.7379e-3, 1e-7);
  EXPECT_NEAR(std::stod(f[6]), 0.98995, 1e-5);
  EXPECT_NE(out.report.find("ratio=0.98995"), std::string::npos);
}

TEST(Execute, PassageAtMedian) {
  const auto cfg = parse({"passage", "--u", "400", "--g", "median", "--n", "10000", "--seed", "2"});
  const auto f = fields(rows(execute(cfg).summary_csv)[1]);
  EXPECT_NEAR(std::stod(f[3]), 0.5, 0.02);
  EXPECT_EQ(f[5], "0.5");
}

TEST(Execute, CltSummaryAndSamples) {
  const auto cfg = parse({"clt", "--model", "cp:3,exp:1,-1", "--barrier", "zero", "--u", "100", "--n", "2000",
                          "--seed", "7"});
  const auto out = execute(cfg);
  const auto s = rows(out.summary_csv);
  const auto f = fields(s[1]);
  EXPECT_LT(std::stod(f[3]), std::stod(f[5]));
  EXPECT_NE(out.summary_csv.find("ks_pass = true"), std::string::npos);
  EXPECT_NE(out.summary_csv.find("# seed = 7"), std::string::npos);
  const auto samples = rows(out.samples_csv);
  ASSERT_EQ(samples.size(), 2001u);
  EXPECT_EQ(samples[0], "replication_index,tau,overshoot,censored,weight");
  EXPECT_EQ(fields(samples[1]).size(), 5u);
}

TEST(Execute, ByteIdenticalAcrossWorkersAndReruns) {
  std::vector<std::string> base = {"clt", "--u", "60", "--n", "3000", "--seed", "11"};
  std::string first;
  for (const char* w : {"1", "4", "16"}) {
    auto args = base;
    args.push_back("--workers");
    args.push_back(w);
    const auto out = execute(parse(args));
    if (first.empty()) {
      first = out.samples_csv + out.summary_csv;
    } else {
      EXPECT_EQ(out.samples_csv + out.summary_csv, first) << "workers " << w;
    }
  }
  const auto tilted_a = execute(parse({"rate", "--model", "cp:1,exp:1,-1", "--barrier", "power:2", "--u", "20",
                                       "--n", "2000", "--tilt", "0.6", "--workers", "1"}));
  const auto tilted_b = execute(parse({"rate", "--model", "cp:1,exp:1,-1", "--barrier", "power:2", "--u", "20",
                                       "--n", "2000", "--tilt", "0.6", "--workers", "16"}));
  EXPECT_EQ(tilted_a.samples_csv, tilted_b.samples_csv);
}

TEST(Overshoot, RequiresFloorSquare) {
  const auto cfg = parse({"overshoot", "--model", "cp:1,unit,0", "--barrier", "zero", "--u", "900.5"});
  try {
    emit_overshoot_experiment(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WrongBarrier);
  }
}

TEST(Overshoot, MinusHalfConcentratesAtHalf) {
  const auto cfg = parse({"overshoot", "--model", "cp:1,unit,0", "--barrier", "floorsq", "--u", "899.5", "--n",
                          "10000", "--seed", "3"});
  const auto f = fields(rows(emit_overshoot_experiment(cfg).summary_csv)[1]);
  EXPECT_GE(std::stod(f[3]), 0.99);
}

TEST(ExitCodes, ConfigAndNumericalErrors) {
  std::string err;
  EXPECT_EQ(entry({"clt", "--model", "cp:3,exp:x,-1"}, &err), 2);
  EXPECT_NE(err.find("--model"), std::string::npos);
  const auto dir = scratch_dir();
  EXPECT_EQ(entry({"overshoot", "--model", "cp:1,unit,0", "--barrier", "zero", "--u", "900.5", "--n", "10", "--out",
                   (dir / "x").string()},
                  &err),
            3);
  EXPECT_NE(err.find("WrongBarrier"), std::string::npos);
  EXPECT_EQ(entry({"bounds", "--model", "cp:3,exp:1,-1", "--barrier", "power:2", "--u", "100", "--n", "10", "--out",
                   (dir / "y").string()},
                  &err),
            3);
  EXPECT_NE(err.find("NoRoot"), std::string::npos);
}

TEST(ExitCodes, WritesFilesAndRerunsMatch) {
  const auto dir = scratch_dir();
  const std::string prefix = (dir / "asym").string();
  const std::vector<std::string> args = {"asym", "--model", "cp:1,exp:1,-1", "--barrier", "linear:1",
                                         "--u",  "10,20",   "--out",         prefix};
  ASSERT_EQ(entry(args), 0);
  std::ifstream a(prefix + "_summary.csv");
  std::stringstream first;
  first << a.rdbuf();
  ASSERT_EQ(entry(args), 0);
  std::ifstream b(prefix + "_summary.csv");
  std::stringstream second;
  second << b.rdbuf();
  EXPECT_EQ(first.str(), second.str());
  EXPECT_TRUE(std::filesystem::exists(prefix + "_samples.csv"));
}

TEST(Binary, ProcessExitCodes) {
  const std::string bin = LEVYREFLECT_CLI_PATH;
  const auto dir = scratch_dir();
  const std::string ok = bin + " asym --model cp:1,exp:1,-1 --barrier linear:1 --u 10 --out " +
                         (dir / "bin").string() + " > /dev/null";
  EXPECT_EQ(WEXITSTATUS(std::system(ok.c_str())), 0);
  const std::string bad = bin + " clt --n zero > /dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(bad.c_str())), 2);
}
