#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace sweep {

/// A point or vector in R^n.
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Nearest-point / sampling tolerance in the set's native scale.
inline constexpr double kBoundaryTol = 1e-9;

}  // namespace sweep
