#include "sweep/monotone_interp.hpp"

#include "sweep/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sweep {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  require(x_.size() == y_.size(), "monotone cubic: x and y sizes differ");
  require(x_.size() >= 2, "monotone cubic: need at least two knots");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    require(x_[i] > x_[i - 1], "monotone cubic: knots must strictly increase");
  }
  const std::size_t n = x_.size();
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    delta[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  slope_.assign(n, 0.0);
  if (n == 2) {
    slope_[0] = slope_[1] = delta[0];
    return;
  }
  // Interior: weighted harmonic mean (Fritsch-Butland form of PCHIP).
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) continue;
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
  // Ends: non-centered three-point formula, limited for shape preservation.
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0) {
      d = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(d) > 3.0 * std::abs(d0)) {
      d = 3.0 * d0;
    }
    return d;
  };
  slope_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  slope_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t MonotoneCubic::segment(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
      0, std::min<std::ptrdiff_t>(it - x_.begin() - 1,
                                  static_cast<std::ptrdiff_t>(x_.size()) - 2)));
  return i;
}

double MonotoneCubic::operator()(double x) const {
  require(!x_.empty(), "monotone cubic: empty interpolant");
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double s = (x - x_[i]) / h;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] +
         h11 * h * slope_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  require(!x_.empty(), "monotone cubic: empty interpolant");
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double s = (x - x_[i]) / h;
  const double d00 = 6.0 * s * (s - 1.0) / h;
  const double d10 = (1.0 - s) * (1.0 - 3.0 * s);
  const double d01 = -d00;
  const double d11 = s * (3.0 * s - 2.0);
  return d00 * y_[i] + d10 * slope_[i] + d01 * y_[i + 1] + d11 * slope_[i + 1];
}

}  // namespace sweep
