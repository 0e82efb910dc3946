#include "sweep/region.hpp"

#include "sweep/errors.hpp"
#include "sweep/random.hpp"

#include <cmath>

namespace sweep {

Region Region::box(Vec lower, Vec upper) {
  require(lower.size() >= 1, "region dimension must be positive");
  require_dimension(lower.size(), upper.size(), "box region");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    require(std::isfinite(lower[i]) && std::isfinite(upper[i]) &&
                lower[i] < upper[i],
            "box region needs finite lower < upper in every coordinate");
  }
  return Region(Kind::Box, std::move(lower), std::move(upper), 0.0);
}

Region Region::ball(Vec center, double radius) {
  require(center.size() >= 1, "region dimension must be positive");
  require(std::isfinite(radius) && radius > 0.0,
          "ball region needs a positive finite radius");
  return Region(Kind::Ball, std::move(center), Vec(), radius);
}

bool Region::contains(const Vec& x) const {
  require_dimension(dimension(), x.size(), "region membership");
  if (kind_ == Kind::Ball) return (x - a_).norm() <= radius_;
  return (x.array() >= a_.array()).all() && (x.array() <= b_.array()).all();
}

double Region::diameter() const {
  return kind_ == Kind::Ball ? 2.0 * radius_ : (b_ - a_).norm();
}

Vec Region::sample(Rng& rng) const {
  const auto n = a_.size();
  if (kind_ == Kind::Box) {
    Vec x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.uniform(a_[i], b_[i]);
    return x;
  }
  const double r = radius_ * std::pow(rng.uniform(0.0, 1.0),
                                      1.0 / static_cast<double>(n));
  return a_ + r * rng.direction(n);
}

}  // namespace sweep
