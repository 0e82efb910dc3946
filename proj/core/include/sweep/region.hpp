#pragma once

#include "sweep/types.hpp"

namespace sweep {

class Rng;

/// Bounded localization window U: an axis-aligned box or a closed ball.
class Region {
 public:
  enum class Kind { Box, Ball };

  static Region box(Vec lower, Vec upper);
  static Region ball(Vec center, double radius);

  Kind kind() const { return kind_; }
  int dimension() const { return static_cast<int>(a_.size()); }
  bool contains(const Vec& x) const;
  /// Upper bound on the distance between any two points of the region.
  double diameter() const;
  Vec sample(Rng& rng) const;

  // Box: a_ = lower, b_ = upper. Ball: a_ = center.
  const Vec& lower() const { return a_; }
  const Vec& upper() const { return b_; }
  const Vec& center() const { return a_; }
  double radius() const { return radius_; }

 private:
  Region(Kind kind, Vec a, Vec b, double radius)
      : kind_(kind), a_(std::move(a)), b_(std::move(b)), radius_(radius) {}

  Kind kind_;
  Vec a_;
  Vec b_;
  double radius_ = 0.0;
};

}  // namespace sweep
