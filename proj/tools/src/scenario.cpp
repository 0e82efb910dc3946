#include "sweep_tools/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace sweep::tools {

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::Sweep:
      return "sweep";
    case Experiment::LengthStudy:
      return "length_study";
    case Experiment::Talweg:
      return "talweg";
    case Experiment::Desingularize:
      return "desingularize";
    case Experiment::Bridge:
      return "bridge";
    case Experiment::StateDep:
      return "statedep";
    case Experiment::Monotone:
      return "monotone";
  }
  return "unknown";
}

std::optional<Experiment> parse_experiment(const std::string& name) {
  for (auto e : {Experiment::Sweep, Experiment::LengthStudy, Experiment::Talweg,
                 Experiment::Desingularize, Experiment::Bridge, Experiment::StateDep,
                 Experiment::Monotone}) {
    if (name == to_string(e)) return e;
  }
  return std::nullopt;
}

namespace {

std::string located(const std::string& message, int line, int column) {
  if (line <= 0) return message;
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
}

}  // namespace

ScenarioError::ScenarioError(const std::string& message, int line, int column)
    : std::runtime_error(located(message, line, column)), line_(line), column_(column) {}

double CheckSpec::get(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second.front();
}

double CheckSpec::require(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ScenarioError("check " + name + ": " + key + " required");
  return it->second.front();
}

std::vector<double> CheckSpec::list(const std::string& key) const {
  const auto it = params.find(key);
  return it == params.end() ? std::vector<double>{} : it->second;
}

namespace {

// ---------------------------------------------------------------------------
// Node helpers
// ---------------------------------------------------------------------------

[[noreturn]] void fail(const YAML::Node& at, const std::string& message) {
  const YAML::Mark m = at.Mark();
  if (m.is_null()) throw ScenarioError(message);
  throw ScenarioError(message, m.line + 1, m.column + 1);
}

void expect_keys(const YAML::Node& node, const std::set<std::string>& allowed,
                 const std::string& context) {
  if (!node.IsMap()) fail(node, context + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(kv.first, context + ": unknown key '" + key + "'");
  }
}

double to_double(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) fail(node, what + ": expected a number");
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    fail(node, what + ": expected a number, got '" + node.Scalar() + "'");
  }
}

long long to_int(const YAML::Node& node, const std::string& what) {
  const double v = to_double(node, what);
  if (v != std::floor(v)) fail(node, what + ": expected an integer");
  return static_cast<long long>(v);
}

std::vector<double> to_doubles(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence()) fail(node, what + ": expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(to_double(node[i], what + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Vec to_vec(const YAML::Node& node, const std::string& what, int dim) {
  const auto v = to_doubles(node, what);
  if (static_cast<int>(v.size()) != dim) {
    fail(node, what + ": expected " + std::to_string(dim) + " coordinates, got " +
                   std::to_string(v.size()));
  }
  return Eigen::Map<const Vec>(v.data(), dim);
}

// ---------------------------------------------------------------------------
// Mathematical objects
// ---------------------------------------------------------------------------

TimeFunction to_time_function(const YAML::Node& node, const std::string& what) {
  if (node.IsScalar()) return TimeFunction::constant(to_double(node, what));
  if (!node.IsMap()) fail(node, what + ": expected a number or a time function mapping");
  try {
    if (node["poly"]) {
      expect_keys(node, {"poly"}, what);
      return TimeFunction::polynomial(to_doubles(node["poly"], what + ".poly"));
    }
    expect_keys(node, {"breaks", "pieces"}, what);
    if (!node["breaks"] || !node["pieces"]) fail(node, what + ": breaks and pieces required");
    std::vector<std::vector<double>> pieces;
    const YAML::Node p = node["pieces"];
    if (!p.IsSequence()) fail(p, what + ".pieces: expected a list");
    for (std::size_t i = 0; i < p.size(); ++i) {
      pieces.push_back(to_doubles(p[i], what + ".pieces[" + std::to_string(i) + "]"));
    }
    return TimeFunction(to_doubles(node["breaks"], what + ".breaks"), std::move(pieces));
  } catch (const InputError& e) {
    fail(node, what + ": " + e.what());
  }
}

TimeCurve to_time_curve(const YAML::Node& node, const std::string& what, int dim) {
  if (!node.IsSequence()) fail(node, what + ": expected a list");
  if (static_cast<int>(node.size()) != dim) {
    fail(node, what + ": expected " + std::to_string(dim) + " components");
  }
  std::vector<TimeFunction> parts;
  for (std::size_t i = 0; i < node.size(); ++i) {
    parts.push_back(to_time_function(node[i], what + "[" + std::to_string(i) + "]"));
  }
  return TimeCurve(std::move(parts));
}

/// [[c, [e1, ..., en]], ...] or {terms: [...]}.
Polynomial to_polynomial(const YAML::Node& node, const std::string& what, int dim) {
  YAML::Node terms = node;
  if (node.IsMap()) {
    expect_keys(node, {"terms"}, what);
    terms = node["terms"];
    if (!terms) fail(node, what + ": terms required");
  }
  if (!terms.IsSequence()) fail(terms, what + ": expected a list of [coefficient, exponents]");
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const YAML::Node t = terms[i];
    const std::string w = what + "[" + std::to_string(i) + "]";
    if (!t.IsSequence() || t.size() != 2) fail(t, w + ": expected [coefficient, exponents]");
    Monomial m;
    m.coefficient = to_double(t[0], w + " coefficient");
    if (!t[1].IsSequence()) fail(t[1], w + ": exponents must be a list");
    for (std::size_t j = 0; j < t[1].size(); ++j) {
      const long long e = to_int(t[1][j], w + " exponent");
      if (e < 0) fail(t[1][j], w + ": exponents must be non-negative");
      m.exponents.push_back(static_cast<int>(e));
    }
    if (static_cast<int>(m.exponents.size()) != dim) {
      fail(t, w + ": expected " + std::to_string(dim) + " exponents");
    }
    out.push_back(std::move(m));
  }
  try {
    return Polynomial(dim, std::move(out));
  } catch (const InputError& e) {
    fail(node, what + ": " + e.what());
  }
}

SetFamily to_family(const YAML::Node& node, const std::string& what, int dim) {
  if (!node.IsMap() || node.size() != 1) {
    fail(node, what + ": expected a single-key mapping naming the family kind");
  }
  const auto it = node.begin();
  const std::string kind = it->first.as<std::string>();
  const YAML::Node body = it->second;
  const std::string w = what + "." + kind;
  auto need = [&](const char* key) {
    if (!body[key]) fail(body, w + ": " + key + " required");
    return body[key];
  };
  try {
    if (kind == "ball") {
      expect_keys(body, {"center", "radius"}, w);
      return SetFamily::ball(to_time_curve(need("center"), w + ".center", dim),
                             to_time_function(need("radius"), w + ".radius"));
    }
    if (kind == "halfspace") {
      expect_keys(body, {"normal", "offset"}, w);
      return SetFamily::halfspace(to_time_curve(need("normal"), w + ".normal", dim),
                                  to_time_function(need("offset"), w + ".offset"));
    }
    if (kind == "lower_bound") {
      expect_keys(body, {"axis", "offset"}, w);
      const long long axis = to_int(need("axis"), w + ".axis");
      if (axis < 0 || axis >= dim) fail(body["axis"], w + ".axis: out of range");
      return SetFamily::lower_bound(dim, static_cast<int>(axis),
                                    to_time_function(need("offset"), w + ".offset"));
    }
    if (kind == "polytope") {
      expect_keys(body, {"faces"}, w);
      const YAML::Node faces = need("faces");
      if (!faces.IsSequence() || faces.size() == 0) fail(faces, w + ".faces: expected a list");
      MovingPolytope poly;
      for (std::size_t i = 0; i < faces.size(); ++i) {
        const std::string fw = w + ".faces[" + std::to_string(i) + "]";
        expect_keys(faces[i], {"normal", "offset"}, fw);
        if (!faces[i]["normal"] || !faces[i]["offset"]) fail(faces[i], fw + ": normal and offset required");
        poly.faces.push_back({to_time_curve(faces[i]["normal"], fw + ".normal", dim),
                              to_time_function(faces[i]["offset"], fw + ".offset")});
      }
      return SetFamily(std::move(poly));
    }
    if (kind == "sublevel") {
      expect_keys(body, {"f", "level"}, w);
      return SetFamily::sublevel(to_polynomial(need("f"), w + ".f", dim),
                                 to_time_function(need("level"), w + ".level"));
    }
    if (kind == "intersection") {
      expect_keys(body, {"members"}, w);
      const YAML::Node members = need("members");
      if (!members.IsSequence() || members.size() == 0) fail(members, w + ".members: expected a list");
      Intersection inter;
      for (std::size_t i = 0; i < members.size(); ++i) {
        inter.members.push_back(to_family(members[i], w + ".members[" + std::to_string(i) + "]", dim));
      }
      return SetFamily(std::move(inter));
    }
    if (kind == "translate") {
      expect_keys(body, {"base", "shift"}, w);
      return SetFamily::translate(to_family(need("base"), w + ".base", dim),
                                  to_time_curve(need("shift"), w + ".shift", dim));
    }
  } catch (const InputError& e) {
    fail(body, w + ": " + e.what());
  }
  fail(it->first, what + ": unknown family kind '" + kind + "'");
}

Region to_region(const YAML::Node& node, int dim) {
  if (!node.IsMap() || node.size() != 1) fail(node, "region: expected {box: ...} or {ball: ...}");
  const auto it = node.begin();
  const std::string kind = it->first.as<std::string>();
  const YAML::Node body = it->second;
  try {
    if (kind == "box") {
      expect_keys(body, {"lower", "upper"}, "region.box");
      if (!body["lower"] || !body["upper"]) fail(body, "region.box: lower and upper required");
      return Region::box(to_vec(body["lower"], "region.box.lower", dim),
                         to_vec(body["upper"], "region.box.upper", dim));
    }
    if (kind == "ball") {
      expect_keys(body, {"center", "radius"}, "region.ball");
      if (!body["center"] || !body["radius"]) fail(body, "region.ball: center and radius required");
      return Region::ball(to_vec(body["center"], "region.ball.center", dim),
                          to_double(body["radius"], "region.ball.radius"));
    }
  } catch (const InputError& e) {
    fail(body, std::string("region: ") + e.what());
  }
  fail(it->first, "region: unknown kind '" + kind + "'");
}

VectorField to_field(const YAML::Node& node, int dim) {
  expect_keys(node, {"components", "alpha"}, "field");
  const YAML::Node comps = node["components"];
  if (!comps) fail(node, "field: components required");
  if (!comps.IsSequence() || static_cast<int>(comps.size()) != dim) {
    fail(comps, "field.components: expected " + std::to_string(dim) + " polynomials");
  }
  std::vector<Polynomial> parts;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    parts.push_back(to_polynomial(comps[i], "field.components[" + std::to_string(i) + "]", dim));
  }
  std::optional<double> alpha;
  if (node["alpha"]) {
    alpha = to_double(node["alpha"], "field.alpha");
    if (!(*alpha > 0.0)) fail(node["alpha"], "field.alpha: must be positive");
  }
  return VectorField(std::move(parts), alpha);
}

std::vector<double> to_grid(const YAML::Node& node) {
  if (node.IsSequence()) {
    auto g = to_doubles(node, "r_grid");
    if (g.empty()) fail(node, "r_grid: empty");
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (!(g[i] > g[i - 1])) fail(node[i], "r_grid: must be strictly increasing");
    }
    return g;
  }
  if (!node.IsMap() || node.size() != 1) fail(node, "r_grid: expected a list or {geometric|linear: ...}");
  const auto it = node.begin();
  const std::string kind = it->first.as<std::string>();
  const YAML::Node body = it->second;
  const std::string w = "r_grid." + kind;
  expect_keys(body, {"lo", "hi", "count"}, w);
  if (!body["lo"] || !body["hi"] || !body["count"]) fail(body, w + ": lo, hi and count required");
  const double lo = to_double(body["lo"], w + ".lo");
  const double hi = to_double(body["hi"], w + ".hi");
  const long long count = to_int(body["count"], w + ".count");
  if (count < 2) fail(body["count"], w + ".count: at least 2");
  if (!(hi > lo)) fail(body, w + ": hi must exceed lo");
  if (kind == "geometric") {
    if (!(lo > 0.0)) fail(body["lo"], w + ".lo: must be positive");
    return geometric_grid(lo, hi, static_cast<std::size_t>(count));
  }
  if (kind == "linear") {
    std::vector<double> g(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return g;
  }
  fail(it->first, "r_grid: unknown spacing '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

struct CheckRule {
  std::set<std::string> allowed;
  std::set<std::string> required;
};

const std::map<std::string, CheckRule>& check_rules(Experiment e) {
  static const std::map<Experiment, std::map<std::string, CheckRule>> rules = {
      {Experiment::Sweep,
       {{"completed", {}},
        {"speed_bound", {{"slack"}, {}}},
        {"no_breakpoints", {}},
        {"lipschitz_steps", {{"L", "slack"}, {"L"}}},
        {"length", {{"expected", "rel_tol"}, {"expected", "rel_tol"}}}}},
      {Experiment::LengthStudy,
       {{"completed", {}},
        {"final_length", {{"expected", "rel_tol"}, {"expected", "rel_tol"}}},
        {"cauchy_gaps", {{"floor"}, {}}}}},
      {Experiment::Talweg,
       {{"talweg_reference",
         {{"coefficient", "exponent", "rel_tol"}, {"coefficient", "exponent", "rel_tol"}}},
        {"no_empty_knots", {}}}},
      {Experiment::Desingularize,
       {{"talweg_reference",
         {{"coefficient", "exponent", "rel_tol"}, {"coefficient", "exponent", "rel_tol"}}},
        {"Phi_reference",
         {{"coefficient", "exponent", "rel_tol"}, {"coefficient", "exponent", "rel_tol"}}},
        {"desing_lip", {{"slack"}, {}}},
        {"chain_ratio", {{"tol"}, {}}}}},
      {Experiment::Bridge,
       {{"swept_norm", {{"a", "b", "s_max", "rel_tol"}, {"a", "b", "s_max", "rel_tol"}}},
        {"inclusion_angle", {{"max"}, {"max"}}},
        {"value_residual", {{"max"}, {"max"}}},
        {"length_invariance", {{"rel_tol"}, {"rel_tol"}}},
        {"speed_bound", {{"slack"}, {}}}}},
      {Experiment::StateDep,
       {{"bounded", {{"max_norm"}, {"max_norm"}}},
        {"length_rate", {{"times", "rate", "rel_tol"}, {"times", "rate", "rel_tol"}}},
        {"inclusion", {{"max"}, {"max"}}}}},
      {Experiment::Monotone,
       {{"completed", {}},
        {"speed", {{"expected", "tol"}, {"expected", "tol"}}},
        {"monotone_bound", {{"slack"}, {}}}}},
  };
  return rules.at(e);
}

std::vector<CheckSpec> to_checks(const YAML::Node& node, Experiment e) {
  if (!node.IsMap()) fail(node, "checks: expected a mapping of check name to parameters");
  const auto& rules = check_rules(e);
  std::vector<CheckSpec> out;
  for (const auto& kv : node) {
    CheckSpec spec;
    spec.name = kv.first.as<std::string>();
    const auto rule = rules.find(spec.name);
    if (rule == rules.end()) {
      fail(kv.first, "checks: '" + spec.name + "' is not a check of experiment " + to_string(e));
    }
    const std::string w = "checks." + spec.name;
    const YAML::Node params = kv.second;
    if (!params.IsNull()) {
      expect_keys(params, rule->second.allowed, w);
      for (const auto& p : params) {
        const auto key = p.first.as<std::string>();
        spec.params[key] = p.second.IsSequence()
                               ? to_doubles(p.second, w + "." + key)
                               : std::vector<double>{to_double(p.second, w + "." + key)};
      }
    }
    for (const auto& key : rule->second.required) {
      if (!spec.params.count(key)) fail(kv.first, w + ": " + key + " required");
    }
    out.push_back(std::move(spec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Default region
// ---------------------------------------------------------------------------

struct Box {
  Vec lo, hi;
};

std::optional<Box> family_bounds(const SetFamily& fam, const std::vector<double>& times) {
  return std::visit(
      [&](const auto& node) -> std::optional<Box> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, MovingBall>) {
          std::optional<Box> box;
          for (double t : times) {
            const Vec c = node.center(t);
            const double r = std::max(0.0, node.radius(t));
            const Vec lo = c.array() - r;
            const Vec hi = c.array() + r;
            if (!box) {
              box = Box{lo, hi};
            } else {
              box->lo = box->lo.cwiseMin(lo);
              box->hi = box->hi.cwiseMax(hi);
            }
          }
          return box;
        } else if constexpr (std::is_same_v<T, Intersection>) {
          std::optional<Box> box;
          for (const auto& m : node.members) {
            const auto b = family_bounds(m, times);
            if (!b) continue;
            if (!box) {
              box = b;
            } else {
              box->lo = box->lo.cwiseMax(b->lo);
              box->hi = box->hi.cwiseMin(b->hi);
            }
          }
          return box;
        } else if constexpr (std::is_same_v<T, Translate>) {
          auto b = family_bounds(*node.base, times);
          if (!b) return b;
          Vec lo = b->lo, hi = b->hi;
          for (double t : times) {
            const Vec s = node.shift(t);
            lo = lo.cwiseMin(Vec(b->lo + s));
            hi = hi.cwiseMax(Vec(b->hi + s));
          }
          return Box{lo, hi};
        } else {
          return std::nullopt;
        }
      },
      fam.node());
}

/// Bounding box of the bounded family parts at the end times and of x0,
/// padded by one unit; [-1, 1]^n when nothing is bounded.
Region default_region(const Scenario& s) {
  const int n = s.dimension;
  std::vector<double> times{s.t0};
  if (s.t_end) times.push_back(*s.t_end);
  if (!s.r_grid.empty()) {
    times = {s.r_grid.front(), s.r_grid.back()};
  }
  std::optional<Box> box;
  if (s.family) box = family_bounds(*s.family, times);
  if (s.x0) {
    if (!box) {
      box = Box{*s.x0, *s.x0};
    } else {
      box->lo = box->lo.cwiseMin(*s.x0);
      box->hi = box->hi.cwiseMax(*s.x0);
    }
  }
  if (!box || !(box->hi.array() >= box->lo.array()).all()) {
    box = Box{Vec::Zero(n), Vec::Zero(n)};
  }
  return Region::box(box->lo.array() - 1.0, box->hi.array() + 1.0);
}

// ---------------------------------------------------------------------------
// Top level
// ---------------------------------------------------------------------------

int infer_dimension(const YAML::Node& root) {
  if (root["dimension"]) {
    const long long d = to_int(root["dimension"], "dimension");
    if (d < 1) fail(root["dimension"], "dimension: must be positive");
    return static_cast<int>(d);
  }
  if (root["x0"] && root["x0"].IsSequence()) return static_cast<int>(root["x0"].size());
  // Otherwise the region's corner or center fixes it.
  const YAML::Node region = root["region"];
  if (region && region.IsMap() && region.size() == 1) {
    const YAML::Node body = region.begin()->second;
    if (body.IsMap()) {
      for (const char* key : {"lower", "center"}) {
        if (body[key] && body[key].IsSequence()) return static_cast<int>(body[key].size());
      }
    }
  }
  throw ScenarioError("dimension required (or give x0 or region)");
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::filesystem::path& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ScenarioError("parse error: " + e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  if (!root.IsMap()) throw ScenarioError("scenario must be a mapping");

  static const std::set<std::string> top = {
      "name",   "experiment", "seed",    "dimension", "family",  "field",
      "f",      "x0",         "t0",      "t_end",     "h",       "h_list",
      "region", "r_grid",     "samples", "a",         "probes",  "points_per_probe",
      "lip",    "checks",     "output_dir"};
  expect_keys(root, top, "scenario");

  Scenario s;
  s.source = source;
  if (!root["name"]) throw ScenarioError("name required");
  s.name = root["name"].as<std::string>();
  if (s.name.empty() || s.name.find_first_of("/\\") != std::string::npos || s.name == "." ||
      s.name == "..") {
    fail(root["name"], "name: must be a non-empty file-name-safe string");
  }
  if (!root["experiment"]) throw ScenarioError("experiment required");
  const auto exp = parse_experiment(root["experiment"].as<std::string>());
  if (!exp) fail(root["experiment"], "experiment: unknown kind '" + root["experiment"].as<std::string>() + "'");
  s.experiment = *exp;
  if (!root["seed"]) throw ScenarioError("seed required");
  {
    const long long seed = to_int(root["seed"], "seed");
    if (seed < 0) fail(root["seed"], "seed: must be non-negative");
    s.seed = static_cast<std::uint64_t>(seed);
  }

  // Which top-level keys each experiment reads, beyond the common ones.
  static const std::map<Experiment, std::pair<std::set<std::string>, std::set<std::string>>>
      usage = {
          {Experiment::Sweep, {{"family", "x0", "t_end", "h"}, {"t0", "region", "lip"}}},
          {Experiment::LengthStudy, {{"family", "x0", "t_end", "h_list"}, {"t0"}}},
          {Experiment::Talweg, {{"family", "r_grid"}, {"region", "samples", "lip"}}},
          {Experiment::Desingularize,
           {{"family", "r_grid", "a"}, {"region", "samples", "lip", "probes", "points_per_probe"}}},
          {Experiment::Bridge, {{"f", "x0", "t_end", "h"}, {"region", "lip"}}},
          {Experiment::StateDep, {{"field", "x0", "t_end", "h"}, {"t0"}}},
          {Experiment::Monotone, {{"family", "field", "x0", "t_end", "h"}, {"t0", "region", "lip"}}},
      };
  static const std::set<std::string> common = {"name", "experiment", "seed", "dimension",
                                                "checks", "output_dir"};
  const auto& [required, optional] = usage.at(s.experiment);
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!common.count(key) && !required.count(key) && !optional.count(key)) {
      fail(kv.first, "key '" + key + "' is not used by experiment " + to_string(s.experiment));
    }
  }
  for (const auto& key : required) {
    if (!root[key]) throw ScenarioError(key + " required");
  }

  s.dimension = infer_dimension(root);
  const int n = s.dimension;

  if (root["x0"]) s.x0 = to_vec(root["x0"], "x0", n);
  if (root["t0"]) s.t0 = to_double(root["t0"], "t0");
  if (root["t_end"]) {
    s.t_end = to_double(root["t_end"], "t_end");
    if (!(*s.t_end > s.t0)) fail(root["t_end"], "t_end: must exceed t0");
  }
  if (root["h"]) {
    s.h = to_double(root["h"], "h");
    if (!(*s.h > 0.0)) fail(root["h"], "h: must be positive");
  }
  if (root["h_list"]) {
    s.h_list = to_doubles(root["h_list"], "h_list");
    if (s.h_list.size() < 3) fail(root["h_list"], "h_list: at least three step sizes required");
    for (std::size_t i = 0; i < s.h_list.size(); ++i) {
      if (!(s.h_list[i] > 0.0)) fail(root["h_list"][i], "h_list: steps must be positive");
      if (i > 0 && std::abs(s.h_list[i - 1] / s.h_list[i] - 2.0) > 2e-9) {
        fail(root["h_list"][i], "h_list: each step must halve the previous one (h_list[" +
                                    std::to_string(i) + "])");
      }
    }
  }
  if (root["family"]) s.family = to_family(root["family"], "family", n);
  if (root["field"]) s.field = to_field(root["field"], n);
  if (root["f"]) s.f = to_polynomial(root["f"], "f", n);
  if (root["r_grid"]) s.r_grid = to_grid(root["r_grid"]);
  if (root["samples"]) {
    s.samples = static_cast<int>(to_int(root["samples"], "samples"));
    if (s.samples < 1) fail(root["samples"], "samples: must be positive");
  }
  if (root["a"]) s.a = to_double(root["a"], "a");
  if (root["probes"]) {
    s.probes = static_cast<int>(to_int(root["probes"], "probes"));
    if (s.probes < 1) fail(root["probes"], "probes: must be positive");
  }
  if (root["points_per_probe"]) {
    s.points_per_probe = static_cast<int>(to_int(root["points_per_probe"], "points_per_probe"));
    if (s.points_per_probe < 1) fail(root["points_per_probe"], "points_per_probe: must be positive");
  }
  if (root["lip"]) {
    const YAML::Node lip = root["lip"];
    expect_keys(lip, {"dt", "radius", "samples", "lip_cap"}, "lip");
    if (lip["dt"]) s.lip.dt = to_double(lip["dt"], "lip.dt");
    if (lip["radius"]) s.lip.radius = to_double(lip["radius"], "lip.radius");
    if (lip["samples"]) s.lip.samples = static_cast<int>(to_int(lip["samples"], "lip.samples"));
    if (lip["lip_cap"]) s.lip.lip_cap = to_double(lip["lip_cap"], "lip.lip_cap");
    if (!(s.lip.dt > 0 && s.lip.radius > 0 && s.lip.samples > 0 && s.lip.lip_cap > 0)) {
      fail(lip, "lip: all parameters must be positive");
    }
  }
  if (s.experiment == Experiment::Desingularize && !s.r_grid.empty() && s.a > s.r_grid.front()) {
    fail(root["a"], "a: must not exceed the first r_grid knot");
  }
  if (s.experiment == Experiment::Monotone) {
    const auto si = s.field->as_scaled_identity();
    if (!si || !(si->scale > 0.0)) {
      fail(root["field"], "field: monotone experiments need F(x) = a x + c with a > 0");
    }
  }
  if (root["region"]) {
    s.region = to_region(root["region"], n);
  } else {
    s.region = default_region(s);
    s.region_defaulted = true;
  }
  if (root["checks"]) s.checks = to_checks(root["checks"], s.experiment);
  s.output_dir = root["output_dir"] ? std::filesystem::path(root["output_dir"].as<std::string>())
                                    : std::filesystem::path(s.name);
  if (s.output_dir.is_absolute()) fail(root["output_dir"], "output_dir: must be relative to the output root");
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

}  // namespace sweep::tools
