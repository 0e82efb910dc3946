#pragma once

#include "sweep/set_family.hpp"
#include "sweep/types.hpp"

#include <cstdint>
#include <optional>

namespace sweep {

struct ProjectionOptions {
  /// Newton starts for nonconvex (sublevel) pieces.
  int starts = 8;
  /// Stationarity residual threshold for the KKT solves.
  double kkt_tol = 1e-10;
  int max_newton = 100;
  std::uint64_t seed = 0;
  double boundary_tol = kBoundaryTol;
  int max_alternating_sweeps = 2000;
};

struct ProjectionResult {
  Vec point;
  double distance = 0.0;
  /// (x - point) / distance; absent when x already lies in the set.
  std::optional<Vec> normal;
  bool converged = true;
  int iterations = 0;
};

/// Nearest point of `slice` to x.
///
/// Balls and half-spaces are closed form; polytopes use exact active-set
/// enumeration; sublevel sets use damped Newton on the KKT system in
/// (y, lambda) from several starts and return the best local solution;
/// intersections use Dykstra's alternating projections polished by a KKT
/// solve on the active constraints.
///
/// Throws EmptySetError when the slice is empty (or, for sublevel sets,
/// when no feasible point could be located).
ProjectionResult project(const Slice& slice, const Vec& x,
                         const ProjectionOptions& options = {});
ProjectionResult project(const SetFamily& family, double t, const Vec& x,
                         const ProjectionOptions& options = {});

/// A unit generator of the proximal normal cone at a point of the slice, or
/// the zero vector at interior points. Throws SingularNormalError where the
/// defining gradient vanishes on the boundary.
Vec proximal_normal(const Slice& slice, const Vec& x_on_set,
                    double boundary_tol = kBoundaryTol);
Vec proximal_normal(const SetFamily& family, double t, const Vec& x_on_set,
                    double boundary_tol = kBoundaryTol);

}  // namespace sweep
