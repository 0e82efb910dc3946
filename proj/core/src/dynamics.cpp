#include "sweep/dynamics.hpp"

#include "sweep/errors.hpp"
#include "sweep/random.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace sweep {

// ---------------------------------------------------------------------------
// VectorField
// ---------------------------------------------------------------------------

VectorField::VectorField(std::vector<Polynomial> components,
                         std::optional<double> monotonicity_alpha)
    : components_(std::move(components)), alpha_(monotonicity_alpha) {
  require(!components_.empty(), "vector field needs at least one component");
  for (const auto& c : components_) {
    require_dimension(dimension(), c.dimension(), "vector field component");
  }
  if (alpha_) {
    require(*alpha_ > 0.0, "monotonicity alpha must be positive");
  }
}

Vec VectorField::operator()(const Vec& x) const {
  require_dimension(dimension(), x.size(), "vector field evaluation");
  Vec out(dimension());
  for (int i = 0; i < dimension(); ++i) out[i] = components_[i].value(x);
  return out;
}

Mat VectorField::jacobian(const Vec& x) const {
  Mat J(dimension(), dimension());
  for (int i = 0; i < dimension(); ++i) {
    J.row(i) = components_[i].gradient(x).transpose();
  }
  return J;
}

double VectorField::sampled_monotonicity(const Region& region, int pairs,
                                         std::uint64_t seed) const {
  require_dimension(dimension(), region.dimension(), "monotonicity sampling");
  Rng rng(StreamKey(seed).split("monotonicity"));
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < pairs; ++i) {
    const Vec x = region.sample(rng);
    const Vec y = region.sample(rng);
    const double dd = (x - y).squaredNorm();
    if (dd == 0.0) continue;
    worst = std::min(worst, ((*this)(x) - (*this)(y)).dot(x - y) / dd);
  }
  return worst;
}

void VectorField::validate_monotonicity(const Region& region, int pairs,
                                        std::uint64_t seed) const {
  if (!alpha_) return;
  const double measured = sampled_monotonicity(region, pairs, seed);
  if (measured < *alpha_ * (1.0 - 1e-9)) {
    throw InputError("vector field is not " + std::to_string(*alpha_) +
                     "-monotone on the region (sampled ratio " +
                     std::to_string(measured) + ")");
  }
}

std::optional<VectorField::ScaledIdentity> VectorField::as_scaled_identity()
    const {
  const int n = dimension();
  std::optional<double> scale;
  Vec offset = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (const auto& term : components_[i].terms()) {
      int total = 0;
      int axis = -1;
      for (int j = 0; j < n; ++j) {
        total += term.exponents[j];
        if (term.exponents[j] > 0) axis = j;
      }
      if (total == 0) {
        offset[i] += term.coefficient;
      } else if (total == 1 && axis == i) {
        diag += term.coefficient;
      } else {
        return std::nullopt;
      }
    }
    if (scale && *scale != diag) return std::nullopt;
    scale = diag;
  }
  return ScaledIdentity{*scale, offset};
}

// ---------------------------------------------------------------------------
// Catching-up integration
// ---------------------------------------------------------------------------

std::vector<double> uniform_grid(double t0, double t_end, double h) {
  require(std::isfinite(h) && h > 0.0, "step h must be positive");
  require(std::isfinite(t0) && std::isfinite(t_end) && t_end > t0,
          "time interval must satisfy t0 < t_end");
  const double span = (t_end - t0) / h;
  const auto steps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(span - 1e-9)));
  std::vector<double> grid(steps + 1);
  for (std::size_t k = 0; k < steps; ++k) grid[k] = t0 + static_cast<double>(k) * h;
  grid[steps] = t_end;
  return grid;
}

namespace {

double window_median(const std::deque<double>& window) {
  std::vector<double> v(window.begin(), window.end());
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

/// Shared catching-up loop. `project_step` maps (t, x_prev, extra_starts) to
/// a projection result in the state space of the trajectory.
template <class ProjectStep>
Trajectory integrate(const Vec& start, double t0, double t_end, double h,
                     const CatchUpOptions& options, double start_offset,
                     ProjectStep&& project_step) {
  Trajectory traj;
  traj.start(t0, start, start_offset);
  const auto grid = uniform_grid(t0, t_end, h);
  std::deque<double> window;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double t = grid[k];
    ProjectionResult r;
    try {
      r = project_step(t, traj.points.back(), 0);
      if (!r.converged) r = project_step(t, traj.points.back(), options.retry_extra_starts);
    } catch (const EmptySetError& e) {
      traj.status = TrajectoryStatus::EmptySweptSet;
      traj.message = "S(t) empty at t = " + std::to_string(t) + ": " + e.what();
      return traj;
    }
    const double dt = t - traj.times.back();
    const double step = (r.point - traj.points.back()).norm();
    const bool warned = !r.converged;
    traj.append(t, std::move(r.point));
    if (warned) traj.warnings.push_back(traj.points.size() - 1);

    bool jump = false;
    if (window.size() >= options.min_history) {
      const double lip = window_median(window) / h;
      jump = step > options.jump_factor * std::max(lip, 1.0) * dt;
    }
    if (jump) {
      traj.breakpoints.push_back(traj.points.size() - 1);
    } else {
      window.push_back(step);
      if (window.size() > options.median_window) window.pop_front();
    }
  }
  return traj;
}

}  // namespace

Trajectory catch_up(const SetFamily& family, const Vec& x0, double t0,
                    double t_end, double h, const CatchUpOptions& options) {
  require_dimension(family.dimension(), x0.size(), "catch_up");
  require(std::isfinite(h) && h > 0.0, "catch_up: step h must be positive");
  auto step = [&](double t, const Vec& x, int extra) {
    ProjectionOptions po = options.projection;
    po.starts += extra;
    return project(family, t, x, po);
  };
  Vec start = x0;
  double offset = 0.0;
  try {
    const ProjectionResult first = step(t0, x0, 0);
    start = first.point;
    offset = first.distance;
  } catch (const EmptySetError& e) {
    Trajectory traj;
    traj.start(t0, x0);
    traj.status = TrajectoryStatus::EmptySweptSet;
    traj.message = std::string("S(t0) empty: ") + e.what();
    return traj;
  }
  return integrate(start, t0, t_end, h, options, offset, step);
}

Trajectory catch_up_monotone(const SetFamily& family, const VectorField& field,
                             const Vec& x0, double t0, double t_end, double h,
                             const CatchUpOptions& options) {
  require_dimension(family.dimension(), field.dimension(), "catch_up_monotone");
  require_dimension(family.dimension(), x0.size(), "catch_up_monotone");
  const auto affine = field.as_scaled_identity();
  if (!affine || affine->scale <= 0.0) {
    throw UnsupportedError(
        "monotone catching-up needs F(x) = a x + c with a > 0");
  }
  const double a = affine->scale;
  const Vec c = affine->offset;
  auto to_state = [&](const Vec& y) -> Vec { return (y - c) / a; };
  auto step = [&](double t, const Vec& x, int extra) {
    ProjectionOptions po = options.projection;
    po.starts += extra;
    ProjectionResult r = project(family, t, Vec(a * x + c), po);
    r.point = to_state(r.point);
    r.distance /= a;
    return r;
  };
  Vec start = x0;
  double offset = 0.0;
  try {
    const ProjectionResult first = step(t0, x0, 0);
    start = first.point;
    offset = first.distance;
  } catch (const EmptySetError& e) {
    Trajectory traj;
    traj.start(t0, x0);
    traj.status = TrajectoryStatus::EmptySweptSet;
    traj.message = std::string("S(t0) empty: ") + e.what();
    return traj;
  }
  return integrate(start, t0, t_end, h, options, offset, step);
}

bool LengthStudy::gaps_strictly_decreasing() const {
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    if (!(gaps[i] < gaps[i - 1])) return false;
  }
  return true;
}

LengthStudy length_study(const SetFamily& family, const Vec& x0, double t0,
                         double t_end, const std::vector<double>& h_list,
                         const CatchUpOptions& options) {
  require(h_list.size() >= 3, "length_study needs at least three step sizes");
  for (std::size_t i = 1; i < h_list.size(); ++i) {
    const double ratio = h_list[i - 1] / h_list[i];
    require(std::abs(ratio - 2.0) <= 1e-9 * 2.0,
            "length_study: each step size must halve the previous one");
  }
  LengthStudy study;
  for (double h : h_list) {
    const Trajectory traj = catch_up(family, x0, t0, t_end, h, options);
    study.samples.push_back({h, traj.length(), traj.breakpoints.size(), traj.status});
  }
  for (std::size_t i = 1; i < study.samples.size(); ++i) {
    study.gaps.push_back(
        std::abs(study.samples[i - 1].length - study.samples[i].length));
  }
  return study;
}

// ---------------------------------------------------------------------------
// ODE orbits
// ---------------------------------------------------------------------------

Trajectory ode_orbit(const VectorField& field, const Vec& x0, double t_end,
                     double h, double t0, double divergence_threshold) {
  require_dimension(field.dimension(), x0.size(), "ode_orbit");
  require(std::isfinite(h) && h > 0.0, "ode_orbit: step h must be positive");
  const auto grid = uniform_grid(t0, t_end, h);
  Trajectory traj;
  traj.start(grid.front(), x0);
  Vec x = x0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double dt = grid[k] - grid[k - 1];
    const Vec k1 = field(x);
    const Vec k2 = field(x + 0.5 * dt * k1);
    const Vec k3 = field(x + 0.5 * dt * k2);
    const Vec k4 = field(x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite() || x.norm() > divergence_threshold) {
      traj.status = TrajectoryStatus::Diverged;
      traj.message = "orbit diverged at t = " + std::to_string(grid[k]);
      return traj;
    }
    traj.append(grid[k], x);
  }
  return traj;
}

InclusionCheck verify_state_dependent_inclusion(const Trajectory& trajectory,
                                                const VectorField& field) {
  InclusionCheck out;
  const auto& p = trajectory.points;
  const auto& t = trajectory.times;
  for (std::size_t k = 1; k + 1 < p.size(); ++k) {
    const Vec f = field(p[k]);
    const double fn = f.norm();
    const Vec v = (p[k + 1] - p[k - 1]) / (t[k + 1] - t[k - 1]);
    const double vn = v.norm();
    if (fn == 0.0 || vn == 0.0) {
      ++out.skipped;
      continue;
    }
    const Vec u = f / fn;
    const Vec orth = v - v.dot(u) * u;
    out.max_residual = std::max(out.max_residual, orth.norm() / vn);
    ++out.checked;
  }
  return out;
}

}  // namespace sweep
