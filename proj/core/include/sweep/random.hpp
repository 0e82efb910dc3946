#pragma once

#include "sweep/types.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace sweep {

/// Derives independent stream keys from (seed, module, call-site tag, ...).
/// Keys are pure functions of their inputs, so every stream is reproducible
/// regardless of evaluation order or thread count.
class StreamKey {
 public:
  explicit StreamKey(std::uint64_t seed) : state_(mix(seed)) {}

  StreamKey split(std::string_view tag) const;
  StreamKey split(std::uint64_t value) const;
  StreamKey split(double value) const;
  StreamKey split(const Vec& v) const;

  std::uint64_t value() const { return state_; }

  static std::uint64_t mix(std::uint64_t x);

 private:
  struct Raw {};
  StreamKey(Raw, std::uint64_t state) : state_(state) {}

  std::uint64_t state_;
};

/// Pseudo-random stream seeded from a StreamKey.
class Rng {
 public:
  explicit Rng(const StreamKey& key) : engine_(key.value()) {}

  double uniform(double lo, double hi);
  double normal();
  /// Uniformly distributed unit vector in R^n.
  Vec direction(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace sweep
