#include "sweep_tools/runner.hpp"
#include "sweep_tools/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace sweep::tools;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void print(const RunReport& r) {
  std::cout << r.scenario << " [" << r.experiment << "]: " << (r.passed() ? "PASS" : "FAIL")
            << '\n';
  for (const auto& c : r.checks) {
    std::cout << "  " << to_string(c.status) << "  " << c.name << "  " << c.detail << '\n';
  }
  if (!r.error.empty()) std::cout << "  error: " << r.error << '\n';
  std::cout << "  output: " << r.directory.string() << '\n';
}

int run_file(const std::string& file, const std::filesystem::path& root,
             std::optional<Experiment> expected) {
  Scenario s;
  try {
    s = load_scenario(file);
  } catch (const ScenarioError& e) {
    throw ScenarioError(file + ": " + e.what());
  }
  if (expected && s.experiment != *expected) {
    std::cerr << "sweep: " << file << " is a " << to_string(s.experiment)
              << " scenario, not " << to_string(*expected) << '\n';
    return kExitUsage;
  }
  const RunReport r = run(s, root);
  print(r);
  return r.passed() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sweeping-process experiments: catching-up integration, talweg and "
               "desingularization estimates, gradient-flow bridge."};
  app.require_subcommand(1);
  std::string root_arg;
  app.add_option("-o,--output-root", root_arg,
                 "Directory for artifacts (default: $SWEEP_OUTPUT_ROOT or ./sweep_out)");

  std::string file;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario file");
  run_cmd->add_option("file", file, "Scenario file")->required();

  std::string dir;
  unsigned jobs = 1;
  auto* suite_cmd = app.add_subcommand("suite", "Run every scenario in a directory");
  suite_cmd->add_option("dir", dir, "Scenario directory")->required();
  suite_cmd->add_option("-j,--jobs", jobs, "Scenarios run concurrently")
      ->check(CLI::PositiveNumber);

  struct Alias {
    const char* name;
    const char* help;
    Experiment experiment;
  };
  const Alias aliases[] = {
      {"talweg", "Run a talweg scenario", Experiment::Talweg},
      {"desingularize", "Run a desingularization scenario", Experiment::Desingularize},
      {"bridge", "Run a gradient-flow bridge scenario", Experiment::Bridge},
  };
  std::vector<std::pair<CLI::App*, Experiment>> alias_cmds;
  for (const auto& a : aliases) {
    auto* cmd = app.add_subcommand(a.name, a.help);
    cmd->add_option("file", file, "Scenario file")->required();
    alias_cmds.emplace_back(cmd, a.experiment);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto root = output_root(root_arg);
  try {
    if (*run_cmd) return run_file(file, root, std::nullopt);
    for (const auto& [cmd, experiment] : alias_cmds) {
      if (*cmd) return run_file(file, root, experiment);
    }
    if (*suite_cmd) {
      const SuiteReport suite = run_suite(dir, root, jobs);
      for (const auto& w : suite.warnings) std::cerr << "sweep: warning: " << w << '\n';
      for (const auto& [path, msg] : suite.load_errors) {
        std::cerr << "sweep: " << path.string() << ": " << msg << '\n';
      }
      for (const auto& r : suite.runs) print(r);
      std::cout << "suite: " << suite.runs.size() << " scenarios, "
                << (suite.passed() ? "PASS" : "FAIL") << " (report: "
                << (root / "suite_report.yaml").string() << ")\n";
      if (!suite.load_errors.empty()) return kExitUsage;
      return suite.passed() ? kExitPass : kExitFail;
    }
  } catch (const ScenarioError& e) {
    std::cerr << "sweep: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "sweep: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
