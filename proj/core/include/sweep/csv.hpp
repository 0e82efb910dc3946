#pragma once

#include "sweep/bridge.hpp"
#include "sweep/dynamics.hpp"
#include "sweep/trajectory.hpp"
#include "sweep/variational.hpp"

#include <iosfwd>
#include <string>

namespace sweep {

/// Shortest decimal that round-trips to the same double; "inf", "-inf",
/// "nan" for non-finite values.
std::string format_double(double v);

/// t, x_1..x_n, step_speed, cum_length, is_breakpoint. Row k carries the
/// speed of the step arriving at node k (0 on the first row).
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

/// r, phi, witness_1..witness_n (witness cells empty on empty knots).
void write_talweg_csv(std::ostream& os, const TalwegProfile& profile,
                      int dimension);

/// r, Phi (the head knot (a, a) first when present).
void write_desing_csv(std::ostream& os, const DesingMap& map);

/// s, u_1..u_n, inclusion_residual, value_residual.
void write_bridge_csv(std::ostream& os, const BridgeResult& result);

/// h, length, gap_to_next, breakpoints, status.
void write_length_study_csv(std::ostream& os, const LengthStudy& study);

}  // namespace sweep
