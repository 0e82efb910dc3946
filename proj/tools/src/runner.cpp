#include "sweep_tools/runner.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

namespace sweep::tools {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Warn:
      return "WARN";
    case Status::Fail:
      return "FAIL";
  }
  return "FAIL";
}

bool RunReport::passed() const {
  return error.empty() &&
         std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == Status::Fail; });
}

bool SuiteReport::passed() const {
  return load_errors.empty() &&
         std::all_of(runs.begin(), runs.end(), [](const RunReport& r) { return r.passed(); });
}

std::filesystem::path output_root(const std::filesystem::path& explicit_root) {
  if (!explicit_root.empty()) return explicit_root;
  if (const char* env = std::getenv("SWEEP_OUTPUT_ROOT"); env && *env) return env;
  return "sweep_out";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t seed_for(const Scenario& s, std::string_view tag) {
  return StreamKey(s.seed).split(tag).value();
}

LipOptions lip_options(const Scenario& s) {
  LipOptions o = s.lip;
  o.seed = seed_for(s, "lip");
  o.projection.seed = seed_for(s, "lip_projection");
  return o;
}

CatchUpOptions catch_up_options(const Scenario& s) {
  CatchUpOptions o;
  o.projection.seed = seed_for(s, "catch_up");
  return o;
}

std::string fmt(double v) { return format_double(v); }

/// Collects check outcomes in the order the scenario lists them.
class Checker {
 public:
  Checker(const Scenario& s, RunReport& report) : scenario_(s), report_(report) {}

  const CheckSpec* find(const std::string& name) const {
    for (const auto& c : scenario_.checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  void record(const std::string& name, Status status, std::string detail) {
    results_[name] = CheckResult{name, status, std::move(detail)};
  }

  void record(const std::string& name, bool ok, std::string detail) {
    record(name, ok ? Status::Pass : Status::Fail, std::move(detail));
  }

  void finish(const std::string& error) {
    for (const auto& c : scenario_.checks) {
      auto it = results_.find(c.name);
      if (it != results_.end()) {
        report_.checks.push_back(it->second);
      } else {
        report_.checks.push_back(
            {c.name, Status::Fail,
             error.empty() ? "not evaluated" : "not evaluated: " + error});
      }
    }
  }

 private:
  const Scenario& scenario_;
  RunReport& report_;
  std::map<std::string, CheckResult> results_;
};

class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, RunReport& report)
      : dir_(std::move(dir)), report_(report) {
    std::filesystem::create_directories(dir_);
  }

  template <class Write>
  void write(const std::string& file, Write&& body) {
    std::ofstream os(dir_ / file, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir_ / file).string());
    body(os);
    report_.artifacts.push_back(file);
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  RunReport& report_;
};

void check_speed_bound(Checker& c, RunReport& r, const Trajectory& traj, const SetFamily& family,
                       const LipOptions& lip) {
  const CheckSpec* spec = c.find("speed_bound");
  if (!spec) return;
  const auto rep = verify_speed_bound(traj, family, lip);
  const double slack = spec->get("slack", 0.05);
  r.metrics["max_ratio"] = rep.max_ratio;
  r.metrics["speed_bound_excluded"] = static_cast<double>(rep.excluded);
  r.metrics["speed_bound_violations"] = static_cast<double>(rep.violations.size());
  c.record("speed_bound", rep.pass(slack),
           "max_ratio " + fmt(rep.max_ratio) + " (limit " + fmt(1.0 + slack) + "), " +
               std::to_string(rep.violations.size()) + " zero-lip violations");
}

void check_completed(Checker& c, const Trajectory& traj) {
  if (!c.find("completed")) return;
  c.record("completed", traj.status == TrajectoryStatus::Completed,
           std::string("status ") + sweep::to_string(traj.status) +
               (traj.message.empty() ? "" : ": " + traj.message));
}

void check_relative(Checker& c, const std::string& name, double value, const std::string& what) {
  const CheckSpec* spec = c.find(name);
  if (!spec) return;
  const double expected = spec->require("expected");
  const double tol = spec->require("rel_tol");
  const double err = std::abs(value - expected) / std::max(std::abs(expected), 1e-300);
  c.record(name, err <= tol,
           what + " " + fmt(value) + " vs " + fmt(expected) + ", relative error " + fmt(err) +
               " (limit " + fmt(tol) + ")");
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

void run_sweep(const Scenario& s, Checker& c, RunReport& r, ArtifactWriter& out) {
  const Trajectory traj = catch_up(*s.family, *s.x0, s.t0, *s.t_end, *s.h, catch_up_options(s));
  out.write("trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, traj); });
  r.metrics["total_length"] = traj.length();
  r.metrics["initial_offset"] = traj.initial_offset;
  r.metrics["steps"] = static_cast<double>(traj.steps());
  r.metrics["breakpoints"] = static_cast<double>(traj.breakpoints.size());
  r.metrics["projection_warnings"] = static_cast<double>(traj.warnings.size());
  r.metrics["final_time"] = traj.times.back();

  check_completed(c, traj);
  check_speed_bound(c, r, traj, *s.family, lip_options(s));
  if (c.find("no_breakpoints")) {
    c.record("no_breakpoints", traj.breakpoints.empty(),
             std::to_string(traj.breakpoints.size()) + " breakpoints");
  }
  if (const CheckSpec* spec = c.find("lipschitz_steps")) {
    const double L = spec->require("L");
    const double slack = spec->get("slack", 0.05);
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.steps(); ++k) {
      const double dt = traj.times[k + 1] - traj.times[k];
      worst = std::max(worst, (traj.points[k + 1] - traj.points[k]).norm() / (L * dt));
    }
    r.metrics["max_step_ratio"] = worst;
    c.record("lipschitz_steps", worst <= 1.0 + slack && traj.breakpoints.empty(),
             "max |dx| / (L dt) " + fmt(worst) + " (limit " + fmt(1.0 + slack) + "), " +
                 std::to_string(traj.breakpoints.size()) + " breakpoints");
  }
  check_relative(c, "length", traj.length(), "length");
}

void run_length_study(const Scenario& s, Checker& c, RunReport& r, ArtifactWriter& out) {
  const LengthStudy study =
      length_study(*s.family, *s.x0, s.t0, *s.t_end, s.h_list, catch_up_options(s));
  out.write("length_study.csv", [&](std::ostream& os) { write_length_study_csv(os, study); });
  const double final_length = study.samples.back().length;
  r.metrics["final_length"] = final_length;
  for (std::size_t i = 0; i < study.gaps.size(); ++i) {
    r.metrics["gap_" + std::to_string(i + 1)] = study.gaps[i];
  }
  if (c.find("completed")) {
    const bool ok = std::all_of(study.samples.begin(), study.samples.end(), [](const auto& x) {
      return x.status == TrajectoryStatus::Completed;
    });
    c.record("completed", ok, ok ? "all runs completed" : "some runs stopped early");
  }
  check_relative(c, "final_length", final_length, "final length");
  if (const CheckSpec* spec = c.find("cauchy_gaps")) {
    const double floor = spec->get("floor", 1e-12 * std::max(1.0, std::abs(final_length)));
    std::string gaps;
    for (double g : study.gaps) gaps += (gaps.empty() ? "" : ", ") + fmt(g);
    if (study.gaps_strictly_decreasing()) {
      c.record("cauchy_gaps", Status::Pass, "gaps strictly decreasing: " + gaps);
    } else if (std::all_of(study.gaps.begin(), study.gaps.end(),
                           [&](double g) { return g <= floor; })) {
      c.record("cauchy_gaps", Status::Warn,
               "lengths agree to rounding (all gaps <= " + fmt(floor) +
                   "), so strict decrease is not observable: " + gaps);
    } else {
      c.record("cauchy_gaps", Status::Fail, "gaps not strictly decreasing: " + gaps);
    }
  }
}

TalwegProfile compute_talweg(const Scenario& s, RunReport& r, ArtifactWriter& out) {
  TalwegOptions opts;
  opts.samples = s.samples;
  opts.seed = seed_for(s, "talweg");
  opts.lip = lip_options(s);
  const TalwegProfile p = talweg_profile(*s.family, s.region, s.r_grid, opts);
  out.write("talweg.csv", [&](std::ostream& os) { write_talweg_csv(os, p, s.dimension); });
  double max_phi = 0.0;
  std::size_t empty = 0, infinite = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.empty[i]) {
      ++empty;
      continue;
    }
    if (p.infinite[i]) ++infinite;
    max_phi = std::max(max_phi, p.phi[i]);
  }
  r.metrics["max_phi"] = max_phi;
  r.metrics["empty_knots"] = static_cast<double>(empty);
  r.metrics["infinite_knots"] = static_cast<double>(infinite);
  return p;
}

/// max |v_i - c r_i^e| / (c r_i^e) over the given knots.
double power_law_error(const std::vector<double>& r, const std::vector<double>& v, double coef,
                       double exponent, std::size_t begin, std::size_t end) {
  double worst = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double ref = coef * std::pow(r[i], exponent);
    worst = std::max(worst, std::abs(v[i] - ref) / std::abs(ref));
  }
  return worst;
}

void check_talweg(const TalwegProfile& p, Checker& c, RunReport& r) {
  if (const CheckSpec* spec = c.find("talweg_reference")) {
    std::vector<double> rr, vv;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.empty[i]) continue;
      rr.push_back(p.r[i]);
      vv.push_back(p.infinite[i] ? kInf : p.phi[i]);
    }
    const double tol = spec->require("rel_tol");
    const double err = rr.empty() ? kInf
                                  : power_law_error(rr, vv, spec->require("coefficient"),
                                                    spec->require("exponent"), 0, rr.size());
    r.metrics["talweg_max_rel_error"] = err;
    c.record("talweg_reference", err <= tol,
             "max relative error " + fmt(err) + " over " + std::to_string(rr.size()) +
                 " knots (limit " + fmt(tol) + ")");
  }
  if (c.find("no_empty_knots")) {
    const auto empty = static_cast<std::size_t>(r.metrics["empty_knots"]);
    c.record("no_empty_knots", empty == 0, std::to_string(empty) + " empty knots");
  }
}

void run_talweg(const Scenario& s, Checker& c, RunReport& r, ArtifactWriter& out) {
  check_talweg(compute_talweg(s, r, out), c, r);
}

/// Probe times at Φ of interior knots, spread evenly.
std::vector<double> desing_probes(const DesingMap& m, int count) {
  const auto& Phi = m.Phi_knots();
  const std::size_t n = Phi.size();
  std::vector<double> probes;
  if (n <= 2) {
    probes.push_back(0.5 * (m.psi_lo() + m.psi_hi()));
    return probes;
  }
  const std::size_t interior = n - 2;
  const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(count), interior);
  for (std::size_t j = 0; j < want; ++j) {
    const std::size_t idx =
        1 + (want == 1 ? interior / 2
                       : static_cast<std::size_t>(std::llround(
                             static_cast<double>(j) * static_cast<double>(interior - 1) /
                             static_cast<double>(want - 1))));
    if (probes.empty() || Phi[idx] > probes.back()) probes.push_back(Phi[idx]);
  }
  return probes;
}

void run_desingularize(const Scenario& s, Checker& c, RunReport& r, ArtifactWriter& out) {
  const TalwegProfile p = compute_talweg(s, r, out);
  check_talweg(p, c, r);
  const DesingMap m = desingularize(p, s.a);
  out.write("desing.csv", [&](std::ostream& os) { write_desing_csv(os, m); });
  r.metrics["quadrature_error"] = m.quadrature_error();
  r.metrics["head_exponent"] = m.head_exponent();
  r.metrics["Phi_end"] = m.psi_hi();

  if (const CheckSpec* spec = c.find("Phi_reference")) {
    const auto& knots = m.knots();
    const double tol = spec->require("rel_tol");
    const double err =
        knots.size() < 3 ? kInf
                         : power_law_error(knots, m.Phi_knots(), spec->require("coefficient"),
                                           spec->require("exponent"), 1, knots.size() - 1);
    r.metrics["Phi_max_rel_error"] = err;
    c.record("Phi_reference", err <= tol,
             "max relative error on interior knots " + fmt(err) + " (limit " + fmt(tol) + ")");
  }
  if (c.find("desing_lip") || c.find("chain_ratio")) {
    const auto probes = desing_probes(m, s.probes);
    LipOptions lip = lip_options(s);
    const DesingCheck check =
        verify_desingularized(*s.family, m, s.region, probes, s.points_per_probe, lip);
    r.metrics["desing_max_lip"] = check.max_lip;
    r.metrics["chain_ratio_min"] = check.min_ratio;
    r.metrics["chain_ratio_max"] = check.max_ratio;
    r.metrics["probes"] = static_cast<double>(probes.size());
    if (const CheckSpec* spec = c.find("desing_lip")) {
      const double slack = spec->get("slack", 0.05);
      c.record("desing_lip", check.pass(slack),
               "max lip of S o Psi " + fmt(check.max_lip) + " at " +
                   std::to_string(probes.size()) + " probes (limit " + fmt(1.0 + slack) + ")");
    }
    if (const CheckSpec* spec = c.find("chain_ratio")) {
      const double tol = spec->get("tol", 0.05);
      const bool ok = std::isfinite(check.min_ratio) && check.min_ratio >= 1.0 - tol &&
                      check.max_ratio <= 1.0 + tol;
      c.record("chain_ratio", ok,
               "ratios in [" + fmt(check.min_ratio) + ", " + fmt(check.max_ratio) +
                   "] (limit 1 +- " + fmt(tol) + ")");
    }
  }
}

void run_bridge_experiment(const Scenario& s, Checker& c, RunReport& r, ArtifactWriter& out) {
  BridgeResult b = run_bridge(*s.f, *s.x0, *s.t_end, *s.h);
  const BridgeCheck bc = verify_sublevel_inclusion(b, *s.f);
  out.write("flow.csv", [&](std::ostream& os) { write_trajectory_csv(os, b.flow.trajectory); });
  out.write("bridge.csv", [&](std::ostream& os) { write_bridge_csv(os, b); });
  const double flow_len = b.flow.trajectory.length();
  const double swept_len = b.swept.trajectory.length();
  r.metrics["b"] = b.swept.b;
  r.metrics["final_value"] = b.flow.final_value;
  r.metrics["max_angle"] = bc.max_angle;
  r.metrics["max_value_residual"] = bc.max_value_residual;
  r.metrics["flow_length"] = flow_len;
  r.metrics["swept_length"] = swept_len;
  r.metrics["s_max"] = b.swept.trajectory.times.back();

  if (const CheckSpec* spec = c.find("swept_norm")) {
    const double a = spec->require("a"), slope = spec->require("b");
    const double s_max = spec->require("s_max"), tol = spec->require("rel_tol");
    double worst = 0.0;
    std::size_t used = 0;
    const auto& u = b.swept.trajectory;
    for (std::size_t k = 0; k < u.points.size(); ++k) {
      if (u.times[k] > s_max) break;
      const double ref = std::sqrt(a + slope * u.times[k]);
      worst = std::max(worst, std::abs(u.points[k].norm() - ref) / ref);
      ++used;
    }
    const bool covered = u.times.back() >= s_max;
    r.metrics["swept_norm_max_rel_error"] = worst;
    c.record("swept_norm", covered && worst <= tol,
             "max relative error " + fmt(worst) + " over " + std::to_string(used) +
                 " nodes (limit " + fmt(tol) + ")" +
                 (covered ? "" : "; curve ends before s_max"));
  }
  if (const CheckSpec* spec = c.find("inclusion_angle")) {
    const double lim = spec->require("max");
    c.record("inclusion_angle", bc.max_angle <= lim,
             "max angle " + fmt(bc.max_angle) + " rad (limit " + fmt(lim) + "), " +
                 std::to_string(bc.skipped) + " critical nodes skipped");
  }
  if (const CheckSpec* spec = c.find("value_residual")) {
    const double lim = spec->require("max");
    c.record("value_residual", bc.max_value_residual <= lim,
             "max |f(u) - (b - s)| " + fmt(bc.max_value_residual) + " (limit " + fmt(lim) + ")");
  }
  if (const CheckSpec* spec = c.find("length_invariance")) {
    const double tol = spec->require("rel_tol");
    const double rel = std::abs(flow_len - swept_len) / std::max(flow_len, 1e-300);
    c.record("length_invariance", rel <= tol,
             "flow " + fmt(flow_len) + ", swept " + fmt(swept_len) + ", relative gap " + fmt(rel));
  }
  check_speed_bound(c, r, b.swept.trajectory, swept_family(*s.f, b.swept.b), lip_options(s));
}

void run_statedep(const Scenario& s, Checker& c, RunReport& r, ArtifactWriter& out) {
  const Trajectory orbit = ode_orbit(*s.field, *s.x0, *s.t_end, *s.h, s.t0);
  const InclusionCheck inc = verify_state_dependent_inclusion(orbit, *s.field);
  out.write("orbit.csv", [&](std::ostream& os) { write_trajectory_csv(os, orbit); });
  double max_norm = 0.0;
  for (const Vec& p : orbit.points) max_norm = std::max(max_norm, p.norm());
  r.metrics["max_norm"] = max_norm;
  r.metrics["total_length"] = orbit.length();
  r.metrics["max_residual"] = inc.max_residual;
  r.metrics["skipped_nodes"] = static_cast<double>(inc.skipped);

  if (const CheckSpec* spec = c.find("bounded")) {
    const double lim = spec->require("max_norm");
    c.record("bounded", max_norm <= lim && orbit.status == TrajectoryStatus::Completed,
             "sup |x| " + fmt(max_norm) + " (limit " + fmt(lim) + ")");
  }
  if (const CheckSpec* spec = c.find("length_rate")) {
    const double rate = spec->require("rate"), tol = spec->require("rel_tol");
    bool ok = true;
    std::string detail;
    for (double T : spec->list("times")) {
      const auto it = std::lower_bound(orbit.times.begin(), orbit.times.end(), T - 0.5 * *s.h);
      if (it == orbit.times.end() || std::abs(*it - T) > 0.5 * *s.h) {
        ok = false;
        detail += "T=" + fmt(T) + " not on grid; ";
        continue;
      }
      const std::size_t k = static_cast<std::size_t>(it - orbit.times.begin());
      const double q = orbit.cum_length[k] / (orbit.times[k] - s.t0);
      r.metrics["length_rate_T" + fmt(T)] = q;
      const bool pass = std::abs(q - rate) <= tol * rate;
      ok = ok && pass;
      detail += "L(" + fmt(T) + ")/T = " + fmt(q) + "; ";
    }
    c.record("length_rate", ok, detail + "target " + fmt(rate) + " +- " + fmt(tol * 100) + "%");
  }
  if (const CheckSpec* spec = c.find("inclusion")) {
    const double lim = spec->require("max");
    c.record("inclusion", inc.max_residual <= lim,
             "max residual " + fmt(inc.max_residual) + " over " + std::to_string(inc.checked) +
                 " nodes (limit " + fmt(lim) + ")");
  }
}

void run_monotone(const Scenario& s, Checker& c, RunReport& r, ArtifactWriter& out) {
  s.field->validate_monotonicity(s.region, 256, seed_for(s, "monotonicity"));
  const Trajectory traj =
      catch_up_monotone(*s.family, *s.field, *s.x0, s.t0, *s.t_end, *s.h, catch_up_options(s));
  out.write("trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, traj); });
  double lo = kInf, hi = 0.0;
  for (double v : traj.step_speeds) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  r.metrics["total_length"] = traj.length();
  r.metrics["min_speed"] = lo;
  r.metrics["max_speed"] = hi;
  check_completed(c, traj);
  if (const CheckSpec* spec = c.find("speed")) {
    const double expected = spec->require("expected"), tol = spec->require("tol");
    const bool ok = !traj.step_speeds.empty() && std::abs(lo - expected) <= tol &&
                    std::abs(hi - expected) <= tol;
    c.record("speed", ok,
             "step speeds in [" + fmt(lo) + ", " + fmt(hi) + "] vs " + fmt(expected) + " +- " +
                 fmt(tol));
  }
  if (const CheckSpec* spec = c.find("monotone_bound")) {
    const auto rep = verify_monotone_bound(traj, *s.field, *s.family, lip_options(s));
    const double slack = spec->get("slack", 0.05);
    r.metrics["max_ratio"] = rep.max_ratio;
    c.record("monotone_bound", rep.pass(slack),
             "max alpha * speed / lip " + fmt(rep.max_ratio) + " (limit " + fmt(1.0 + slack) + ")");
  }
}

}  // namespace

RunReport run(const Scenario& s, const std::filesystem::path& root) {
  RunReport r;
  r.scenario = s.name;
  r.experiment = to_string(s.experiment);
  Checker checker(s, r);
  r.directory = root / s.output_dir;
  ArtifactWriter out(r.directory, r);
  try {
    switch (s.experiment) {
      case Experiment::Sweep:
        run_sweep(s, checker, r, out);
        break;
      case Experiment::LengthStudy:
        run_length_study(s, checker, r, out);
        break;
      case Experiment::Talweg:
        run_talweg(s, checker, r, out);
        break;
      case Experiment::Desingularize:
        run_desingularize(s, checker, r, out);
        break;
      case Experiment::Bridge:
        run_bridge_experiment(s, checker, r, out);
        break;
      case Experiment::StateDep:
        run_statedep(s, checker, r, out);
        break;
      case Experiment::Monotone:
        run_monotone(s, checker, r, out);
        break;
    }
  } catch (const Error& e) {
    r.error = e.what();
  } catch (const std::exception& e) {
    r.error = std::string("internal error: ") + e.what();
  }
  checker.finish(r.error);
  std::ofstream os(out.dir() / "report.yaml", std::ios::binary);
  write_report(os, r);
  return r;
}

namespace {

void emit_report(YAML::Emitter& em, const RunReport& r) {
  em << YAML::BeginMap;
  em << YAML::Key << "scenario" << YAML::Value << r.scenario;
  em << YAML::Key << "experiment" << YAML::Value << r.experiment;
  em << YAML::Key << "status" << YAML::Value << (r.passed() ? "PASS" : "FAIL");
  em << YAML::Key << "checks" << YAML::Value << YAML::BeginMap;
  for (const auto& c : r.checks) {
    em << YAML::Key << c.name << YAML::Value << YAML::BeginMap;
    em << YAML::Key << "status" << YAML::Value << to_string(c.status);
    em << YAML::Key << "detail" << YAML::Value << YAML::DoubleQuoted << c.detail;
    em << YAML::EndMap;
  }
  em << YAML::EndMap;
  em << YAML::Key << "metrics" << YAML::Value << YAML::BeginMap;
  for (const auto& [k, v] : r.metrics) em << YAML::Key << k << YAML::Value << format_double(v);
  em << YAML::EndMap;
  em << YAML::Key << "artifacts" << YAML::Value << YAML::BeginSeq;
  for (const auto& a : r.artifacts) em << a.generic_string();
  em << YAML::EndSeq;
  if (!r.error.empty()) {
    em << YAML::Key << "error" << YAML::Value << YAML::DoubleQuoted << r.error;
  }
  em << YAML::EndMap;
}

}  // namespace

void write_report(std::ostream& os, const RunReport& report) {
  YAML::Emitter em;
  emit_report(em, report);
  os << em.c_str() << '\n';
}

void write_suite_report(std::ostream& os, const SuiteReport& report) {
  YAML::Emitter em;
  em << YAML::BeginMap;
  em << YAML::Key << "status" << YAML::Value << (report.passed() ? "PASS" : "FAIL");
  em << YAML::Key << "scenarios" << YAML::Value << YAML::BeginSeq;
  for (const auto& r : report.runs) emit_report(em, r);
  em << YAML::EndSeq;
  if (!report.load_errors.empty()) {
    em << YAML::Key << "load_errors" << YAML::Value << YAML::BeginMap;
    for (const auto& [path, msg] : report.load_errors) {
      em << YAML::Key << path.filename().string() << YAML::Value << YAML::DoubleQuoted << msg;
    }
    em << YAML::EndMap;
  }
  if (!report.warnings.empty()) {
    em << YAML::Key << "warnings" << YAML::Value << YAML::BeginSeq;
    for (const auto& w : report.warnings) em << YAML::DoubleQuoted << w;
    em << YAML::EndSeq;
  }
  em << YAML::EndMap;
  os << em.c_str() << '\n';
}

SuiteReport run_suite(const std::filesystem::path& directory, const std::filesystem::path& root,
                      unsigned jobs) {
  if (!std::filesystem::is_directory(directory)) {
    throw ScenarioError("not a directory: " + directory.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".yaml" || ext == ".yml")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  SuiteReport suite;
  std::vector<Scenario> scenarios;
  std::map<std::string, std::filesystem::path> names;
  for (const auto& file : files) {
    try {
      scenarios.push_back(load_scenario(file));
    } catch (const ScenarioError& e) {
      suite.load_errors.emplace_back(file, e.what());
    }
  }
  for (const auto& s : scenarios) {
    const auto [it, fresh] = names.emplace(s.name, s.source);
    if (!fresh) {
      throw ScenarioError("duplicate scenario name '" + s.name + "' in " +
                          it->second.filename().string() + " and " + s.source.filename().string());
    }
  }
  if (files.empty()) suite.warnings.push_back("no scenario files in " + directory.string());

  suite.runs.resize(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      suite.runs[i] = run(scenarios[i], root);
    }
  };
  const unsigned width =
      std::max(1u, std::min<unsigned>(jobs == 0 ? 1u : jobs, static_cast<unsigned>(scenarios.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < width; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::filesystem::create_directories(root);
  std::ofstream os(root / "suite_report.yaml", std::ios::binary);
  write_suite_report(os, suite);
  return suite;
}

}  // namespace sweep::tools
