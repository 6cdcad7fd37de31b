#pragma once

// Suite execution: a list of catalog systems estimated under one master
// seed, reconciled against exact predictions and cohomological bounds.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "polyent/harness/catalog.hpp"
#include "polyent/lab/separation.hpp"

namespace polyent::harness {

// Per-system or suite-wide changes to the catalog's estimator settings.
struct EstimatorOverrides {
  std::optional<std::vector<double>> eps;
  std::optional<std::size_t> n_max;   // drops larger n from the schedule
  std::optional<std::size_t> pool;
  std::optional<double> tolerance;
};

struct SuiteEntry {
  std::string system;
  EstimatorOverrides overrides;
};

struct SuiteConfig {
  std::string name = "suite";
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> catalog;   // built-in catalog when empty
  std::vector<SuiteEntry> entries;
  EstimatorOverrides overrides;
  unsigned workers = 1;
};

// JSON keys: name, seed, catalog, systems (names or {"system", "eps", "n_max",
// "pool", "tolerance"}), overrides, workers. Throws ConfigError listing every problem.
SuiteConfig parse_suite_config(const std::string& json_text, const std::string& origin = "suite config");
SuiteConfig load_suite_config(const std::filesystem::path& path);

// "reference-values" and "smoke".
SuiteConfig builtin_suite(const std::string& name);
std::vector<std::string> builtin_suite_names();

enum class Verdict { Consistent, Inconsistent, Untested };
std::string to_string(Verdict v);

struct ReconciliationRow {
  std::string system;
  std::optional<double> predicted;
  std::string predicted_source;
  std::optional<long> upper_bound;
  std::optional<double> estimated;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Untested;
  std::string note;
};

// Consistent iff |estimated - predicted| <= tolerance and estimated <= upper_bound + 0.2.
// Breaking the bound is Inconsistent even without a prediction.
inline constexpr double kBoundSlack = 0.2;
ReconciliationRow reconcile(std::string system, const Prediction& prediction, std::optional<long> upper_bound,
                            std::optional<double> estimated, double tolerance, std::string note = "");

// Every problem detectable before running anything: unknown systems,
// estimator parameters the sampler or schedule would reject.
std::vector<std::string> validate_suite(const SuiteConfig& config, const Catalog& catalog);

// Seed of one system's run: splitmix fan-out of the master seed keyed by the
// FNV-1a hash of the system name, so any entry can be rerun alone.
std::uint64_t system_seed(std::uint64_t master, const std::string& system);

// Effective estimator parameters of one entry after overrides.
lab::BowenParams entry_params(const SuiteConfig& config, const SuiteEntry& entry, const CatalogSystem& system);

struct SystemRun {
  std::string system;
  std::optional<lab::SeparationCurve> curve;
  std::optional<lab::ExponentFit> fit;
  std::string error;
  double seconds = 0.0;   // not written to any report file
};

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<SystemRun> runs;
  std::vector<ReconciliationRow> rows;
  int exit_code() const;   // 0 all Consistent/Untested, 1 any Inconsistent
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInconsistent = 1;
inline constexpr int kExitConfigError = 2;

// Validates first and throws ConfigError without running anything if the config is bad.
SuiteReport run_suite(const SuiteConfig& config, const Catalog& catalog);

// Report files. All numbers use fixed formats, so equal inputs give equal bytes.
std::string runs_csv(const SuiteReport& r);             // system,eps,n,sep_count,saturated,seed
std::string plotdata_csv(const SuiteReport& r);         // system,eps,n,count,saturated,seed
std::string reconciliation_csv(const SuiteReport& r);
std::string summary_json(const SuiteReport& r);

// Writes runs.csv, plotdata.csv, reconciliation.csv and summary.json into dir.
void write_suite_outputs(const SuiteReport& r, const std::filesystem::path& dir);

// Fixed-precision decimal used by every report.
std::string fixed(double x, int digits);

}  // namespace polyent::harness
