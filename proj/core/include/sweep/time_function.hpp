#pragma once

#include "sweep/types.hpp"

#include <vector>

namespace sweep {

/// Scalar piecewise-polynomial function of time.
///
/// Piece i covers [breaks[i-1], breaks[i]) with the first and last pieces
/// extending to -inf and +inf. Coefficients are in powers of absolute t:
/// c0 + c1 t + c2 t^2 + ...
class TimeFunction {
 public:
  TimeFunction() : pieces_{{0.0}} {}
  TimeFunction(std::vector<double> breaks,
               std::vector<std::vector<double>> pieces);

  static TimeFunction constant(double c) { return TimeFunction({}, {{c}}); }
  /// c0 + c1 t.
  static TimeFunction affine(double c0, double c1) {
    return TimeFunction({}, {{c0, c1}});
  }
  static TimeFunction polynomial(std::vector<double> coefficients) {
    return TimeFunction({}, {std::move(coefficients)});
  }

  double operator()(double t) const;
  /// Right derivative at t.
  double derivative(double t) const;
  bool is_constant() const;

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<std::vector<double>>& pieces() const { return pieces_; }

 private:
  std::size_t piece_index(double t) const;

  std::vector<double> breaks_;
  std::vector<std::vector<double>> pieces_;
};

/// Vector-valued curve of time, one TimeFunction per coordinate.
class TimeCurve {
 public:
  TimeCurve() = default;
  explicit TimeCurve(std::vector<TimeFunction> components)
      : components_(std::move(components)) {}

  static TimeCurve constant(const Vec& v);

  int dimension() const { return static_cast<int>(components_.size()); }
  Vec operator()(double t) const;
  bool is_constant() const;
  const std::vector<TimeFunction>& components() const { return components_; }

 private:
  std::vector<TimeFunction> components_;
};

}  // namespace sweep
