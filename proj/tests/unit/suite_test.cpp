#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "matchlab/suite.hpp"

using namespace matchlab;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("matchlab-unit-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string config_key(const std::string& text) {
  try {
    parse_suite_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}
}  // namespace

TEST(SuiteConfig, ParsesTopLevelAndSections) {
  const auto c = parse_suite_config("seed = 7\nout = here\nthreads = 2\n# note\n[approx-check]\nmax_edges = 4\n");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_TRUE(c.seed_given);
  EXPECT_EQ(c.out_dir, "here");
  EXPECT_EQ(c.threads, 2u);
  ASSERT_EQ(c.experiments.size(), 1u);
  EXPECT_EQ(c.experiments[0].params.at("max_edges"), "4");
  EXPECT_EQ(c.experiments[0].params.at("approx_epsilon"), experiment_defaults("approx-check").at("approx_epsilon"));
}

TEST(SuiteConfig, ErrorsNameTheKey) {
  EXPECT_EQ(config_key("[no-such-experiment]\n"), "no-such-experiment");
  EXPECT_EQ(config_key("[approx-check]\nbogus = 1\n"), "approx-check.bogus");
  EXPECT_EQ(config_key("colour = blue\n"), "colour");
  EXPECT_EQ(config_key("seed = many\n"), "seed");
}

TEST(SuiteConfig, DefaultTextRoundTrips) {
  const auto c = parse_suite_config(default_config_text());
  ASSERT_EQ(c.experiments.size(), experiment_names().size());
  for (std::size_t i = 0; i < c.experiments.size(); ++i) {
    EXPECT_EQ(c.experiments[i].name, experiment_names()[i]);
    EXPECT_EQ(c.experiments[i].params, experiment_defaults(c.experiments[i].name));
  }
}

TEST(SuiteConfig, SeedFromEnvironment) {
  setenv("MATCHLAB_SEED", "42", 1);
  EXPECT_EQ(default_root_seed(), 42u);
  unsetenv("MATCHLAB_SEED");
  EXPECT_EQ(default_root_seed(), 1u);
}

TEST(SuiteConfig, ExperimentSeedsDiffer) {
  EXPECT_NE(experiment_seed(1, "approx-check"), experiment_seed(1, "mixing-tv"));
  EXPECT_NE(experiment_seed(1, "approx-check"), experiment_seed(2, "approx-check"));
  EXPECT_EQ(experiment_seed(1, "approx-check"), experiment_seed(1, "approx-check"));
}

TEST(RunSuite, EmptyListSucceeds) {
  SuiteConfig c;
  c.out_dir = scratch("empty").string();
  const auto r = run_suite(c);
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_EQ(slurp(r.summary_path), "criterion,experiment,check,value,threshold,pass\n");
}

TEST(RunSuite, SmallApproxCheckPasses) {
  SuiteConfig c = parse_suite_config("[approx-check]\nmax_edges = 5\n");
  c.out_dir = scratch("approx").string();
  const auto r = run_suite(c);
  EXPECT_EQ(r.exit_code(), 0);
  ASSERT_EQ(r.experiments.size(), 1u);
  EXPECT_FALSE(r.experiments[0].rows.empty());
  EXPECT_TRUE(fs::exists(r.experiments[0].csv_path));
  EXPECT_NE(slurp(r.summary_path).find(",PASS"), std::string::npos);
}

TEST(RunSuite, RerunIsByteIdentical) {
  SuiteConfig c = parse_suite_config("threads = 2\n[approx-check]\nmax_edges = 4\n[hexagon-lowerbound]\nells = 1,2\n");
  const fs::path a = scratch("rerun-a"), b = scratch("rerun-b");
  c.out_dir = a.string();
  run_suite(c);
  c.out_dir = b.string();
  run_suite(c);
  for (const char* f : {"approx-check.csv", "hexagon-lowerbound.csv", "summary.csv"}) {
    EXPECT_FALSE(slurp(a / f).empty()) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST(PlotData, Examples) {
  const fs::path dir = scratch("plot");
  {
    std::ofstream(dir / "one.csv") << "lambda,w\n2,0.5\n";
    std::ofstream(dir / "empty.csv") << "lambda,w\n";
    std::ofstream(dir / "many.csv") << "lambda,w,z\n0.5,0.1,x\n1,0.2,y\n2,0.4,z\n";
  }
  emit_plotdata((dir / "one.csv").string(), "lambda", "w", (dir / "one.dat").string());
  EXPECT_EQ(slurp(dir / "one.dat"), "# lambda w\n2 0.5\n");
  emit_plotdata((dir / "empty.csv").string(), "lambda", "w", (dir / "empty.dat").string());
  EXPECT_EQ(slurp(dir / "empty.dat"), "# lambda w\n");
  emit_plotdata((dir / "many.csv").string(), "lambda", "w", (dir / "many.dat").string());
  EXPECT_EQ(slurp(dir / "many.dat"), "# lambda w\n0.5 0.1\n1 0.2\n2 0.4\n");
  EXPECT_ANY_THROW(emit_plotdata((dir / "one.csv").string(), "lambda", "nope", (dir / "bad.dat").string()));
}
