#pragma once

#include "sweep_tools/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace sweep::tools {

enum class Status { Pass, Warn, Fail };

const char* to_string(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::Fail;
  std::string detail;
};

struct RunReport {
  std::string scenario;
  std::string experiment;
  std::vector<CheckResult> checks;
  std::map<std::string, double> metrics;
  /// Artifact file names, relative to `directory`.
  std::vector<std::filesystem::path> artifacts;
  std::filesystem::path directory;
  /// Module error that stopped the experiment, if any.
  std::string error;

  bool passed() const;
};

/// Output root: the explicit argument when non-empty, else $SWEEP_OUTPUT_ROOT,
/// else "sweep_out" in the working directory.
std::filesystem::path output_root(const std::filesystem::path& explicit_root = {});

/// Runs the experiment, writes CSV artifacts and report.yaml under
/// `root / scenario.output_dir`. Module errors become FAIL entries.
RunReport run(const Scenario& scenario, const std::filesystem::path& root);

struct SuiteReport {
  std::vector<RunReport> runs;
  /// Files that failed to load, with their messages.
  std::vector<std::pair<std::filesystem::path, std::string>> load_errors;
  std::vector<std::string> warnings;

  bool passed() const;
};

/// Runs every *.yaml / *.yml file of `directory` (sorted by name) on up to
/// `jobs` threads and writes suite_report.yaml under `root`. Throws
/// ScenarioError on duplicate scenario names.
SuiteReport run_suite(const std::filesystem::path& directory, const std::filesystem::path& root,
                      unsigned jobs);

void write_report(std::ostream& os, const RunReport& report);
void write_suite_report(std::ostream& os, const SuiteReport& report);

}  // namespace sweep::tools
