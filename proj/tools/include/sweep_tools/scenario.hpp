#pragma once

#include <sweep/sweep.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sweep::tools {

enum class Experiment { Sweep, LengthStudy, Talweg, Desingularize, Bridge, StateDep, Monotone };

const char* to_string(Experiment e);
std::optional<Experiment> parse_experiment(const std::string& name);

/// Malformed or semantically invalid scenario file. `line`/`column` are
/// 1-based and 0 when unknown.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& message, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// One named check with numeric parameters (scalars are one-element lists).
struct CheckSpec {
  std::string name;
  std::map<std::string, std::vector<double>> params;

  double get(const std::string& key, double fallback) const;
  double require(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;
};

struct Scenario {
  std::string name;
  Experiment experiment = Experiment::Sweep;
  std::uint64_t seed = 0;
  int dimension = 0;

  std::optional<SetFamily> family;
  std::optional<VectorField> field;
  std::optional<Polynomial> f;
  std::optional<Vec> x0;
  double t0 = 0.0;
  std::optional<double> t_end;
  std::optional<double> h;
  std::vector<double> h_list;
  Region region = Region::box(Vec::Constant(1, -1.0), Vec::Constant(1, 1.0));
  bool region_defaulted = false;

  // talweg / desingularize
  std::vector<double> r_grid;
  int samples = 64;
  double a = 0.0;
  int probes = 16;
  int points_per_probe = 8;

  LipOptions lip;
  std::vector<CheckSpec> checks;

  /// Relative to the output root.
  std::filesystem::path output_dir;
  std::filesystem::path source;
};

/// Parses and validates a scenario file (strict: unknown keys are errors).
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& text, const std::filesystem::path& source = {});

}  // namespace sweep::tools
