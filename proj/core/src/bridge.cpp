#include "sweep/bridge.hpp"

#include "parallel.hpp"
#include "sweep/errors.hpp"
#include "sweep/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sweep {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Angle between a and b in [0, π], accurate near 0.
double angle_between(const Vec& a, const Vec& b) {
  const Vec bu = b / b.norm();
  const double along = a.dot(bu);
  const double across = (a - along * bu).norm();
  return std::atan2(across, along);
}

}  // namespace

GradientFlow gradient_flow(const Polynomial& f, const Vec& x0, double t_end,
                           double h, const GradientFlowOptions& options) {
  require_dimension(f.dimension(), x0.size(), "gradient_flow");
  require(std::isfinite(h) && h > 0.0, "gradient_flow: step h must be positive");
  const auto grid = uniform_grid(0.0, t_end, h);
  GradientFlow out;
  Trajectory& traj = out.trajectory;
  traj.start(0.0, x0);
  Vec x = x0;
  auto field = [&](const Vec& y) -> Vec { return -f.gradient(y); };
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (f.gradient(x).norm() < options.grad_stop) {
      traj.status = TrajectoryStatus::CriticalPoint;
      traj.message = "‖∇f‖ below grad_stop at t = " + std::to_string(grid[k - 1]);
      break;
    }
    const double dt = grid[k] - grid[k - 1];
    const Vec k1 = field(x);
    const Vec k2 = field(x + 0.5 * dt * k1);
    const Vec k3 = field(x + 0.5 * dt * k2);
    const Vec k4 = field(x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite() || x.norm() > options.divergence_threshold) {
      traj.status = TrajectoryStatus::Diverged;
      traj.message = "gradient flow diverged at t = " + std::to_string(grid[k]);
      break;
    }
    traj.append(grid[k], x);
  }
  out.final_value = f.value(traj.points.back());
  return out;
}

SweptCurve reparametrize_by_value(const Trajectory& flow, const Polynomial& f,
                                  double tie_tol) {
  require(!flow.points.empty(), "reparametrize_by_value: empty flow");
  SweptCurve out;
  out.b = f.value(flow.points.front());
  Trajectory& u = out.trajectory;
  u.start(0.0, flow.points.front());
  out.source_index.push_back(0);
  double last_value = out.b;
  for (std::size_t k = 1; k < flow.points.size(); ++k) {
    const double v = f.value(flow.points[k]);
    const double tol = tie_tol * std::max(1.0, std::abs(last_value));
    if (v >= last_value) {
      if (v - last_value > tol) {
        throw NonMonotoneFlowError("f increases along the flow at node " +
                                   std::to_string(k));
      }
      continue;  // tie: collapse onto the previous node
    }
    const double s = out.b - v;
    if (!(s > u.times.back())) continue;
    u.append(s, flow.points[k]);
    out.source_index.push_back(k);
    last_value = v;
  }

  const auto& s = u.times;
  const auto& p = u.points;
  const std::size_t n = p.size();
  out.velocity.resize(n);
  if (n == 1) {
    out.velocity.clear();
    return out;
  }
  if (n == 2) {
    const Vec d = (p[1] - p[0]) / (s[1] - s[0]);
    out.velocity = {d, d};
    return out;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double h1 = s[k] - s[k - 1];
    const double h2 = s[k + 1] - s[k];
    out.velocity[k] = (-h2 / (h1 * (h1 + h2))) * p[k - 1] +
                      ((h2 - h1) / (h1 * h2)) * p[k] +
                      (h1 / (h2 * (h1 + h2))) * p[k + 1];
  }
  {
    const double h1 = s[1] - s[0];
    const double h2 = s[2] - s[1];
    out.velocity[0] = (-(2.0 * h1 + h2) / (h1 * (h1 + h2))) * p[0] +
                      ((h1 + h2) / (h1 * h2)) * p[1] +
                      (-h1 / (h2 * (h1 + h2))) * p[2];
  }
  {
    const double h1 = s[n - 2] - s[n - 3];
    const double h2 = s[n - 1] - s[n - 2];
    out.velocity[n - 1] = (h2 / (h1 * (h1 + h2))) * p[n - 3] +
                          (-(h1 + h2) / (h1 * h2)) * p[n - 2] +
                          ((2.0 * h2 + h1) / (h2 * (h1 + h2))) * p[n - 1];
  }
  return out;
}

SetFamily swept_family(const Polynomial& f, double b) {
  return SetFamily::sublevel(f, TimeFunction::affine(b, -1.0));
}

BridgeCheck verify_sublevel_inclusion(BridgeResult& result,
                                      const Polynomial& f) {
  BridgeCheck out;
  const auto& u = result.swept.trajectory;
  const std::size_t n = u.points.size();
  result.inclusion_residuals.assign(n, kNaN);
  result.value_residuals.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto vg = f.value_gradient(u.points[k]);
    result.value_residuals[k] = std::abs(vg.value - (result.swept.b - u.times[k]));
    out.max_value_residual = std::max(out.max_value_residual, result.value_residuals[k]);
    if (k >= result.swept.velocity.size()) continue;
    const Vec& v = result.swept.velocity[k];
    if (vg.gradient.norm() == 0.0 || v.norm() == 0.0) {
      ++out.skipped;
      continue;
    }
    result.inclusion_residuals[k] = angle_between(-v, vg.gradient);
    out.max_angle = std::max(out.max_angle, result.inclusion_residuals[k]);
  }
  return out;
}

BridgeResult run_bridge(const Polynomial& f, const Vec& x0, double t_end,
                        double h, const GradientFlowOptions& options) {
  BridgeResult r;
  r.flow = gradient_flow(f, x0, t_end, h, options);
  r.swept = reparametrize_by_value(r.flow.trajectory, f);
  verify_sublevel_inclusion(r, f);
  return r;
}

TalwegProfile level_talweg(const Polynomial& f, const Region& region,
                           const std::vector<double>& r_grid,
                           const LevelTalwegOptions& options) {
  require(!r_grid.empty(), "level_talweg: empty grid");
  require_dimension(f.dimension(), region.dimension(), "level_talweg");
  const std::size_t n = r_grid.size();
  TalwegProfile p;
  p.r = r_grid;
  p.phi.assign(n, 0.0);
  p.infinite.assign(n, false);
  p.empty.assign(n, false);
  p.witness.assign(n, std::nullopt);
  auto poly = std::make_shared<const Polynomial>(f);
  const int dim = f.dimension();
  const StreamKey key = StreamKey(options.seed).split("level_talweg");

  // Newton retraction onto [f = r] along ∇f.
  auto retract = [&](Vec x, double r) {
    for (int i = 0; i < 8; ++i) {
      const auto vg = f.value_gradient(x);
      const double gg = vg.gradient.squaredNorm();
      if (gg == 0.0) break;
      x -= ((vg.value - r) / gg) * vg.gradient;
    }
    return x;
  };

  std::vector<char> infinite(n, 0), empty(n, 0);
  detail::parallel_for(n, 0, [&](std::size_t i) {
    const double r = r_grid[i];
    const Slice slice(dim, SublevelSlice{poly, r, Vec::Zero(dim)});
    const SliceSamples s = sample_boundary(
        slice, region, options.starts, key.split(static_cast<std::uint64_t>(i)).value());
    if (s.points.empty()) {
      empty[i] = 1;
      return;
    }
    double best = kInf;
    for (const Vec& start : s.points) {
      Vec x = start;
      double gnorm = f.gradient(x).norm();
      double step = 0.1 * region.diameter();
      for (int it = 0; it < options.max_iterations && step > 1e-14; ++it) {
        if (gnorm == 0.0) break;
        const Vec g = f.gradient(x);
        const Vec normal = g / g.norm();
        // ∇(½‖∇f‖²) = H ∇f, restricted to the tangent space of the level set.
        Vec d = f.hessian(x) * g;
        d -= d.dot(normal) * normal;
        const double dn = d.norm();
        if (dn < 1e-14) break;
        d /= dn;
        bool moved = false;
        while (step > 1e-14) {
          const Vec trial = retract(x - step * d, r);
          if (trial.allFinite() && region.contains(trial) &&
              std::abs(f.value(trial) - r) <= 1e-9 * std::max(1.0, std::abs(r))) {
            const double tn = f.gradient(trial).norm();
            if (tn < gnorm) {
              x = trial;
              gnorm = tn;
              moved = true;
              step *= 1.5;
              break;
            }
          }
          step *= 0.5;
        }
        if (!moved) break;
      }
      if (gnorm < best) {
        best = gnorm;
        p.witness[i] = x;
      }
    }
    if (best == 0.0) {
      infinite[i] = 1;
      p.phi[i] = kInf;
    } else {
      p.phi[i] = 1.0 / best;
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    p.infinite[i] = infinite[i] != 0;
    p.empty[i] = empty[i] != 0;
  }
  return p;
}

}  // namespace sweep
