#include "sweep/time_function.hpp"

#include "sweep/errors.hpp"

#include <algorithm>

namespace sweep {

TimeFunction::TimeFunction(std::vector<double> breaks,
                           std::vector<std::vector<double>> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  require(pieces_.size() == breaks_.size() + 1,
          "time function needs exactly one more piece than breakpoints");
  require(std::is_sorted(breaks_.begin(), breaks_.end()) &&
              std::adjacent_find(breaks_.begin(), breaks_.end()) ==
                  breaks_.end(),
          "time function breakpoints must be strictly increasing");
  for (auto& p : pieces_) {
    if (p.empty()) p.push_back(0.0);
  }
}

std::size_t TimeFunction::piece_index(double t) const {
  return static_cast<std::size_t>(
      std::upper_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin());
}

double TimeFunction::operator()(double t) const {
  const auto& c = pieces_[piece_index(t)];
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

double TimeFunction::derivative(double t) const {
  const auto& c = pieces_[piece_index(t)];
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) v = v * t + static_cast<double>(k) * c[k];
  return v;
}

bool TimeFunction::is_constant() const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& c = pieces_[i];
    for (std::size_t k = 1; k < c.size(); ++k) {
      if (c[k] != 0.0) return false;
    }
    if (i > 0 && c[0] != pieces_[0][0]) return false;
  }
  return true;
}

TimeCurve TimeCurve::constant(const Vec& v) {
  std::vector<TimeFunction> comps;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    comps.push_back(TimeFunction::constant(v[i]));
  }
  return TimeCurve(std::move(comps));
}

Vec TimeCurve::operator()(double t) const {
  Vec out(dimension());
  for (int i = 0; i < dimension(); ++i) out[i] = components_[i](t);
  return out;
}

bool TimeCurve::is_constant() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const TimeFunction& f) { return f.is_constant(); });
}

}  // namespace sweep
