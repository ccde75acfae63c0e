#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "shrinker/entropy.hpp"
#include "shrinker/gaussian_experiment.hpp"
#include "shrinker/output.hpp"

namespace shrinker {

enum class Status { Pass, Marginal, Fail };
std::string to_string(Status status);

struct CheckReport {
  std::string id;
  std::string anchor;  ///< key of docs/anchors.json
  Status status = Status::Fail;
  nlohmann::json values = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  double wall_time = 0.0;  ///< console only, never serialized
};

/// Serialized form without the wall time.
nlohmann::json to_json(const CheckReport& report);

/// A file produced by a check, relative to the output directory.
struct Artifact {
  std::string name;
  std::string content;
};

struct CheckResult {
  CheckReport report;
  std::vector<Artifact> artifacts;
};

struct SuiteContext {
  int m = 4;
  unsigned seed = 42;
};

struct CheckSpec {
  std::string id;
  std::string anchor;
  std::string summary;
  std::function<CheckResult(const SuiteContext&)> run;
};

/// The verify-all checks in report order.
const std::vector<CheckSpec>& check_registry();

/// Every anchor id the library and the CLI can emit, with a one-line description.
const std::map<std::string, std::string>& anchor_index();

/// Runs one registered check, timing it; library errors become a failing report.
CheckResult run_check(const CheckSpec& spec, const SuiteContext& ctx);

struct SuiteResult {
  std::vector<CheckResult> checks;
  bool pass = false;  ///< no check failed (marginal counts as pass)
};

/// Runs the selected checks (all when `ids` is empty) with at most `threads` in flight.
/// Results keep registry order regardless of completion order.
SuiteResult run_suite(const SuiteContext& ctx, const std::vector<std::string>& ids = {},
                      int threads = 1);

/// reports.json plus every check artifact.
void write_suite(const SuiteResult& result, const std::filesystem::path& dir);

/// SHRINKER_LAB_THREADS when set to a positive integer, else the hardware concurrency.
int thread_cap();

// Artifact builders shared with the CLI.
CsvTable gap_table(const std::vector<AntipodalGap>& gaps);
SvgPlot gap_plot(const ConformalGaussian& cg, const AntipodalGap& gap);
CsvTable mu_table(const NuReport& report);
SvgPlot mu_plot(const NuReport& report, const std::string& title);

}  // namespace shrinker
