#pragma once

#include "sweep/polynomial.hpp"
#include "sweep/region.hpp"
#include "sweep/set_family.hpp"
#include "sweep/trajectory.hpp"
#include "sweep/variational.hpp"

#include <cstdint>
#include <vector>

namespace sweep {

struct GradientFlowOptions {
  double grad_stop = 1e-10;
  double divergence_threshold = 1e12;
};

struct GradientFlow {
  Trajectory trajectory;
  /// f at the last node; the asymptotic critical value when the flow
  /// stopped on ‖∇f‖ < grad_stop.
  double final_value = 0.0;
};

/// RK4 for x' = -∇f(x) on [0, t_end].
GradientFlow gradient_flow(const Polynomial& f, const Vec& x0, double t_end,
                           double h, const GradientFlowOptions& options = {});

/// The flow re-timed by s = b - f(x(t)), b = f(x(0)).
struct SweptCurve {
  double b = 0.0;
  /// Strictly increasing s grid; `trajectory.times` equals it.
  Trajectory trajectory;
  /// du/ds by three-point differences with exact nonuniform weights.
  std::vector<Vec> velocity;
  /// Flow node index of each swept node (nodes with tied values collapse).
  std::vector<std::size_t> source_index;
};

/// Throws NonMonotoneFlowError when f increases along the flow by more than
/// `tie_tol` (relative); smaller increases collapse nodes.
SweptCurve reparametrize_by_value(const Trajectory& flow, const Polynomial& f,
                                  double tie_tol = 1e-12);

/// Sublevel family S(s) = [f <= b - s] swept by the reparametrized curve.
SetFamily swept_family(const Polynomial& f, double b);

struct BridgeResult {
  GradientFlow flow;
  SweptCurve swept;
  /// Angle (radians) between -du/ds and ∇f(u) per swept node; NaN where
  /// ∇f(u) = 0.
  std::vector<double> inclusion_residuals;
  /// |f(u(s)) - (b - s)| per swept node.
  std::vector<double> value_residuals;
};

struct BridgeCheck {
  double max_angle = 0.0;
  double max_value_residual = 0.0;
  std::size_t skipped = 0;
};

/// Fills the residual vectors of `result` and returns their maxima.
BridgeCheck verify_sublevel_inclusion(BridgeResult& result, const Polynomial& f);

/// gradient_flow + reparametrize_by_value + verify_sublevel_inclusion.
BridgeResult run_bridge(const Polynomial& f, const Vec& x0, double t_end,
                        double h, const GradientFlowOptions& options = {});

struct LevelTalwegOptions {
  int starts = 16;
  int max_iterations = 200;
  std::uint64_t seed = 0;
};

/// φ(r) = 1 / min{‖∇f(x)‖ : f(x) = r, x ∈ region}, minimized by multistart
/// projected gradient descent on the level set from sampled level points.
TalwegProfile level_talweg(const Polynomial& f, const Region& region,
                           const std::vector<double>& r_grid,
                           const LevelTalwegOptions& options = {});

}  // namespace sweep
