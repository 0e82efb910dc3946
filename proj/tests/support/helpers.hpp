#pragma once

#include <sweep/sweep.hpp>

#include <initializer_list>

namespace sweep::testing {

inline Vec vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

/// x^2 + y^2 (or the weighted variant) on R^2.
inline Polynomial square_norm_2d() {
  return Polynomial(2, {{1.0, {2, 0}}, {1.0, {0, 2}}});
}

/// x^2 - y^2 on R^2.
inline Polynomial cone_2d() {
  return Polynomial(2, {{1.0, {2, 0}}, {-1.0, {0, 2}}});
}

/// {x_1 >= t} in R^2.
inline SetFamily translating_halfspace() {
  return SetFamily::lower_bound(2, 0, TimeFunction::affine(0.0, 1.0));
}

/// {x^2 + y^2 <= 1 - t}.
inline SetFamily shrinking_disc() {
  return SetFamily::sublevel(square_norm_2d(), TimeFunction::affine(1.0, -1.0));
}

/// {x^2 + y^2 <= t}.
inline SetFamily growing_disc() {
  return SetFamily::sublevel(square_norm_2d(), TimeFunction::affine(0.0, 1.0));
}

}  // namespace sweep::testing
