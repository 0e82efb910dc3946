#include "sweep_tools/runner.hpp"
#include "sweep_tools/scenario.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace sweep;
using namespace sweep::tools;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = SWEEP_SCENARIO_DIR;

const char* kMinimalSweep = R"(
name: minimal
experiment: sweep
seed: 9
family:
  lower_bound: {axis: 0, offset: {poly: [0, 1]}}
x0: [0, 0]
t_end: 0.5
h: 0.01
)";

/// Fresh empty directory under the system temp dir.
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sweep_test_scenario_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal sweep scenario gets documented defaults") {
  const Scenario s = parse_scenario(kMinimalSweep);
  CHECK(s.name == "minimal");
  CHECK(s.experiment == Experiment::Sweep);
  CHECK(s.dimension == 2);
  CHECK(s.samples == 64);
  CHECK(s.t0 == 0.0);
  CHECK(s.region_defaulted);
  CHECK(s.output_dir == fs::path("minimal"));
  // The half-space is unbounded, so the region is the box around x0 padded by 1.
  CHECK(s.region.contains(Vec::Constant(2, 0.99)));
  CHECK_FALSE(s.region.contains(Vec::Constant(2, 1.01)));
}

TEST_CASE("default region covers a bounded family") {
  const Scenario s = parse_scenario(R"(
name: ball
experiment: sweep
seed: 1
family:
  ball: {center: [{poly: [0, 3]}, 0], radius: 1}
x0: [0, 0]
t_end: 1
h: 0.1
)");
  CHECK(s.region.contains(Vec::Constant(2, 0.0)));
  Vec far(2);
  far << 4.9, 0.0;
  CHECK(s.region.contains(far));
}

TEST_CASE("semantic errors name the field") {
  std::string text = kMinimalSweep;
  text.erase(text.find("x0:"), std::string("x0: [0, 0]\n").size());
  CHECK(error_of("dimension: 2\n" + text) == "x0 required");

  CHECK(error_of("name: s\nexperiment: sweep\nfamily: {lower_bound: {axis: 0, offset: 0}}\n"
                 "x0: [0, 0]\nt_end: 1\nh: 0.1\n") == "seed required");

  const std::string bad_h = R"(name: lengths
experiment: length_study
seed: 1
family: {lower_bound: {axis: 0, offset: {poly: [0, 1]}}}
x0: [0, 0]
t_end: 1
h_list: [0.1, 0.05, 0.02]
)";
  const std::string msg = error_of(bad_h);
  CHECK(msg.find("h_list: each step must halve the previous one (h_list[2])") != std::string::npos);
  CHECK(msg.find("line 7") == 0);
}

TEST_CASE("strict parsing reports line and column") {
  try {
    parse_scenario(std::string(kMinimalSweep) + "tolerance: 3\n");
    FAIL("no error");
  } catch (const ScenarioError& e) {
    CHECK(e.line() == 10);
    CHECK(e.column() == 1);
    CHECK(std::string(e.what()).find("unknown key 'tolerance'") != std::string::npos);
  }
  // A key that exists but is not read by this experiment.
  CHECK(error_of(std::string(kMinimalSweep) + "a: 0.1\n").find("not used by experiment sweep") !=
        std::string::npos);
  // Unknown check and unknown check parameter.
  CHECK(error_of(std::string(kMinimalSweep) + "checks: {speed: }\n")
            .find("'speed' is not a check of experiment sweep") != std::string::npos);
  CHECK(error_of(std::string(kMinimalSweep) + "checks: {speed_bound: {slak: 1}}\n")
            .find("unknown key 'slak'") != std::string::npos);
  // Malformed YAML.
  const std::string broken = error_of("name: [unclosed\n");
  CHECK(broken.find("parse error") != std::string::npos);
  CHECK(broken.find("line ") == 0);
}

TEST_CASE("family and field syntax") {
  CHECK(error_of(std::string(kMinimalSweep).replace(std::string(kMinimalSweep).find("lower_bound"),
                                                    11, "cylinder"))
            .find("unknown family kind 'cylinder'") != std::string::npos);
  const Scenario s = parse_scenario(R"(
name: mono
experiment: monotone
seed: 1
family: {lower_bound: {axis: 0, offset: {poly: [0, 1]}}}
field: {components: [[[2, [1, 0]]], [[2, [0, 1]]]], alpha: 2}
x0: [0, 0]
t_end: 1
h: 0.01
)");
  REQUIRE(s.field);
  CHECK(s.field->monotonicity_alpha() == 2.0);
  CHECK(error_of(R"(
name: mono
experiment: monotone
seed: 1
family: {lower_bound: {axis: 0, offset: {poly: [0, 1]}}}
field: {components: [[[-1, [0, 1]]], [[1, [1, 0]]]]}
x0: [0, 0]
t_end: 1
h: 0.01
)")
            .find("monotone experiments need") != std::string::npos);
}

TEST_CASE("module errors become FAIL entries") {
  const fs::path root = scratch("module_error");
  // The set is empty from t = 0.5 on.
  const Scenario s = parse_scenario(R"(
name: vanishing
experiment: sweep
seed: 1
family: {ball: {center: [0, 0], radius: {poly: [0.5, -1]}}}
x0: [0, 0]
t_end: 1
h: 0.01
checks:
  completed:
  length: {expected: 0, rel_tol: 1}
)");
  const RunReport r = run(s, root);
  CHECK_FALSE(r.passed());
  REQUIRE(r.checks.size() == 2);
  CHECK(r.checks[0].name == "completed");
  CHECK(r.checks[0].status == Status::Fail);
  CHECK(r.checks[0].detail.find("empty_swept_set") != std::string::npos);
  CHECK(fs::exists(root / "vanishing" / "report.yaml"));
}

TEST_CASE("bundled acceptance suite passes") {
  const fs::path root = scratch("acceptance");
  const SuiteReport suite = run_suite(kScenarios / "acceptance", root, 2);
  CHECK(suite.load_errors.empty());
  CHECK(suite.runs.size() == 7);
  for (const auto& r : suite.runs) {
    INFO(r.scenario);
    CHECK(r.passed());
    for (const auto& c : r.checks) {
      INFO(c.name, ": ", c.detail);
      CHECK(c.status != Status::Fail);
    }
  }
  CHECK(suite.passed());
  CHECK(fs::exists(root / "suite_report.yaml"));

  const auto find = [&](const std::string& name) -> const RunReport& {
    for (const auto& r : suite.runs) {
      if (r.scenario == name) return r;
    }
    FAIL("missing scenario " << name);
    throw;
  };
  CHECK(find("halfspace_speed").metrics.at("max_ratio") <= 1.05);
  CHECK(find("shrinking_ball_length").metrics.at("final_length") ==
        doctest::Approx(0.9).epsilon(0.01));
  CHECK(find("statedep_limit_cycle").metrics.at("length_rate_T100") ==
        doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("suite: parallel width does not change artifacts") {
  const fs::path dir = scratch("parallel_src");
  for (const char* name : {"halfspace_speed", "monotone_halfspace", "talweg_sqrt"}) {
    fs::copy_file(kScenarios / "acceptance" / (std::string(name) + ".yaml"),
                  dir / (std::string(name) + ".yaml"));
  }
  const fs::path a = scratch("parallel_a"), b = scratch("parallel_b");
  run_suite(dir, a, 1);
  run_suite(dir, b, 3);
  for (const char* file : {"halfspace_speed/trajectory.csv", "monotone_halfspace/trajectory.csv",
                           "talweg_sqrt/talweg.csv", "talweg_sqrt/report.yaml",
                           "suite_report.yaml"}) {
    INFO(file);
    const std::string x = slurp(a / file);
    CHECK_FALSE(x.empty());
    CHECK(x == slurp(b / file));
  }
}

TEST_CASE("suite: empty directory and duplicate names") {
  const fs::path empty = scratch("empty");
  const fs::path root = scratch("empty_out");
  const SuiteReport r = run_suite(empty, root, 4);
  CHECK(r.runs.empty());
  CHECK(r.passed());
  REQUIRE(r.warnings.size() == 1);
  CHECK(fs::exists(root / "suite_report.yaml"));

  const fs::path dup = scratch("dup");
  put(dup / "a.yaml", kMinimalSweep);
  put(dup / "b.yaml", kMinimalSweep);
  CHECK_THROWS_WITH_AS(run_suite(dup, root, 1),
                       doctest::Contains("duplicate scenario name 'minimal'"), ScenarioError);

  const fs::path bad = scratch("bad");
  put(bad / "a.yaml", kMinimalSweep);
  put(bad / "b.yaml", "name: b\n");
  const SuiteReport partial = run_suite(bad, root, 1);
  CHECK(partial.runs.size() == 1);
  CHECK(partial.runs[0].passed());
  REQUIRE(partial.load_errors.size() == 1);
  CHECK_FALSE(partial.passed());
}

TEST_CASE("output root: argument, then environment, then default") {
  ::unsetenv("SWEEP_OUTPUT_ROOT");
  CHECK(output_root() == fs::path("sweep_out"));
  ::setenv("SWEEP_OUTPUT_ROOT", "/tmp/elsewhere", 1);
  CHECK(output_root() == fs::path("/tmp/elsewhere"));
  CHECK(output_root("given") == fs::path("given"));
  ::unsetenv("SWEEP_OUTPUT_ROOT");
}

TEST_CASE("repeated runs write byte-identical files") {
  const Scenario s = load_scenario(kScenarios / "acceptance" / "desing_sqrt.yaml");
  const fs::path a = scratch("repeat_a"), b = scratch("repeat_b");
  run(s, a);
  run(s, b);
  for (const char* file : {"talweg.csv", "desing.csv", "report.yaml"}) {
    INFO(file);
    CHECK(slurp(a / s.output_dir / file) == slurp(b / s.output_dir / file));
  }
}
