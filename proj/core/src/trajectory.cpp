#include "sweep/trajectory.hpp"

#include "sweep/errors.hpp"

#include <algorithm>

namespace sweep {

const char* to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::Completed:
      return "completed";
    case TrajectoryStatus::EmptySweptSet:
      return "empty_swept_set";
    case TrajectoryStatus::Diverged:
      return "diverged";
    case TrajectoryStatus::CriticalPoint:
      return "critical_point";
  }
  return "unknown";
}

bool Trajectory::is_breakpoint(std::size_t node) const {
  return std::binary_search(breakpoints.begin(), breakpoints.end(), node);
}

void Trajectory::start(double t0, Vec x0, double offset) {
  times.assign(1, t0);
  points.assign(1, std::move(x0));
  step_speeds.clear();
  cum_length.assign(1, offset);
  breakpoints.clear();
  warnings.clear();
  initial_offset = offset;
}

void Trajectory::append(double t, Vec x) {
  require(!times.empty(), "trajectory: append before start");
  const double dt = t - times.back();
  require(dt > 0.0, "trajectory: times must be strictly increasing");
  const double step = (x - points.back()).norm();
  step_speeds.push_back(step / dt);
  cum_length.push_back(cum_length.back() + step);
  times.push_back(t);
  points.push_back(std::move(x));
}

}  // namespace sweep
