#pragma once

#include "sweep/types.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace sweep {

enum class TrajectoryStatus {
  Completed,
  /// Integration stopped at a time where S(t) was empty.
  EmptySweptSet,
  /// ‖x‖ exceeded the divergence threshold.
  Diverged,
  /// A gradient flow reached ‖∇f‖ below the stopping threshold.
  CriticalPoint,
};

const char* to_string(TrajectoryStatus s);

/// A discrete curve t_0 < ... < t_N with per-step bookkeeping.
///
/// Step k joins node k to node k+1; `step_speeds` has one entry per step.
/// `cum_length[k]` is `initial_offset` plus the polyline length up to node k.
/// `breakpoints` holds node indices reached by a restart jump.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> points;
  std::vector<double> step_speeds;
  std::vector<double> cum_length;
  std::vector<std::size_t> breakpoints;
  /// Distance covered before t_0 (projection of an infeasible x0).
  double initial_offset = 0.0;
  TrajectoryStatus status = TrajectoryStatus::Completed;
  /// Steps whose projection did not certify convergence.
  std::vector<std::size_t> warnings;
  std::string message;

  std::size_t steps() const { return step_speeds.size(); }
  double length() const { return cum_length.empty() ? 0.0 : cum_length.back(); }
  bool is_breakpoint(std::size_t node) const;

  /// Starts a trajectory at (t0, x0).
  void start(double t0, Vec x0, double offset = 0.0);
  /// Appends node (t, x) and the step joining it to the previous node.
  void append(double t, Vec x);
};

}  // namespace sweep
