#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "matchlab/types.hpp"

namespace matchlab {

/// Problem in a suite configuration; key() is "section.key" or the section
/// name when the whole section is at fault.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ExperimentConfig {
  std::string name;
  /// Every key of the experiment, defaults filled in.
  std::map<std::string, std::string> params;
};

/// Flat key = value text. Top-level keys: seed, out, threads. Each
/// "[experiment-name]" header starts a section whose keys override that
/// experiment's defaults; '#' starts a comment. Experiments run in the
/// order their sections appear.
struct SuiteConfig {
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string out_dir = "matchlab-out";
  unsigned threads = 1;
  std::vector<ExperimentConfig> experiments;
};

SuiteConfig parse_suite_config(std::string_view text);
SuiteConfig load_suite_config(const std::string& path);

/// Root seed when neither the command line nor the config names one:
/// MATCHLAB_SEED if set, else 1.
std::uint64_t default_root_seed();

/// Names accepted as sections, in canonical order.
const std::vector<std::string>& experiment_names();
/// Default parameters; the thresholds here mirror the acceptance criteria.
const std::map<std::string, std::string>& experiment_defaults(const std::string& name);
/// A config file listing every experiment with its defaults.
std::string default_config_text();

/// Per-experiment seed: mix64(root ^ hash_name(name)).
std::uint64_t experiment_seed(std::uint64_t root, const std::string& name);

struct CriterionRow {
  int criterion = 0;
  std::string experiment;
  std::string check;
  std::string value;
  std::string threshold;
  bool pass = false;
};

struct ExperimentResult {
  std::string name;
  std::string csv_path;
  std::vector<CriterionRow> rows;
  bool pass() const;
};

/// Runs one experiment and writes <out_dir>/<name>.csv.
ExperimentResult run_experiment(const ExperimentConfig& config, std::uint64_t root_seed, const std::string& out_dir);

struct SuiteResult {
  std::vector<ExperimentResult> experiments;
  std::string summary_path;
  bool pass() const;
  int exit_code() const { return pass() ? 0 : 1; }
};

/// Runs the experiments on `config.threads` workers, then writes
/// <out_dir>/summary.csv (criterion,experiment,check,value,threshold,pass)
/// in config order. The output holds no timings, so reruns are byte-identical.
SuiteResult run_suite(const SuiteConfig& config);

/// Two whitespace-separated columns taken from a CSV with a header row,
/// preceded by a "# x y" comment line.
void emit_plotdata(const std::string& csv_path, const std::string& x_column, const std::string& y_column,
                   const std::string& out_path);

}  // namespace matchlab
