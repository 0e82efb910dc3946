#include "sweep/variational.hpp"

#include "parallel.hpp"
#include "sweep/errors.hpp"
#include "sweep/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sweep {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<Vec> unit_sphere(int dimension, int directions,
                             std::uint64_t seed) {
  if (dimension == 1) return {Vec::Constant(1, -1.0), Vec::Constant(1, 1.0)};
  Rng rng(StreamKey(seed).split("unit_sphere"));
  std::vector<Vec> out;
  for (int i = 0; i < directions; ++i) out.push_back(rng.direction(dimension));
  for (int i = 0; i < dimension; ++i) {
    Vec e = Vec::Zero(dimension);
    e[i] = 1.0;
    out.push_back(e);
    out.push_back(-e);
  }
  return out;
}

}  // namespace

double outer_norm(const HomogeneousMap& map, int dimension, int directions,
                  std::uint64_t seed) {
  double best = 0.0;
  for (const Vec& x : unit_sphere(dimension, directions, seed)) {
    for (const Vec& y : map(x)) best = std::max(best, y.norm());
  }
  return best;
}

double inverse_outer_norm(const HomogeneousMap& map, int dimension,
                          int directions, std::uint64_t seed) {
  double inf_dist = kInf;
  for (const Vec& x : unit_sphere(dimension, directions, seed)) {
    double d = kInf;  // dist(0, ∅) = +inf
    for (const Vec& y : map(x)) d = std::min(d, y.norm());
    inf_dist = std::min(inf_dist, d);
  }
  return inf_dist == 0.0 ? kInf : 1.0 / inf_dist;
}

double excess(const SetFamily& family, double t_from, double t_to,
              const Region& region, int samples, std::uint64_t seed,
              const ProjectionOptions& projection) {
  require(samples >= 1, "excess: samples must be positive");
  const Slice from = family.at(t_from);
  const Slice to = family.at(t_to);
  if (to.trivially_empty()) throw EmptySliceError("excess: target slice is empty");
  const SliceSamples s =
      sample_boundary(from, region, samples, StreamKey(seed).split("excess").value());
  if (s.points.empty() && s.interior.empty()) {
    throw EmptySliceError("excess: source slice has no points in the region");
  }
  double best = 0.0;
  auto visit = [&](const Vec& p) {
    try {
      best = std::max(best, project(to, p, projection).distance);
    } catch (const EmptySetError& e) {
      throw EmptySliceError(std::string("excess: ") + e.what());
    }
  };
  for (const Vec& p : s.points) visit(p);
  const std::size_t interior =
      std::min(s.interior.size(), static_cast<std::size_t>(samples));
  for (std::size_t i = 0; i < interior; ++i) visit(s.interior[i]);
  return best;
}

LipEstimate lip_estimate(const SetFamily& family, double t, const Vec& x,
                         const LipOptions& options) {
  require(options.dt > 0.0 && options.radius > 0.0,
          "lip_estimate: dt and radius must be positive");
  const Slice here = family.at(t);
  require(here.violation(x) <= options.membership_tol,
          "lip_estimate: x is not in S(t)");
  LipEstimate out;
  out.t = t;
  out.x = x;
  out.dt_used = options.dt;
  out.radius_used = options.radius;

  const Region window = Region::ball(x, options.radius);
  const double taus[] = {t - options.dt, t - 0.5 * options.dt,
                         t + 0.5 * options.dt, t + options.dt};
  const StreamKey key = StreamKey(options.seed).split("lip_estimate");
  int used = 0;
  for (int i = 0; i < 4; ++i) {
    const double tau = taus[i];
    try {
      const double e = excess(family, tau, t, window, options.samples,
                              key.split(static_cast<std::uint64_t>(i)).value(),
                              options.projection);
      out.value = std::max(out.value, e / std::abs(tau - t));
      ++used;
    } catch (const DomainError&) {
      out.one_sided = true;
    } catch (const EmptySliceError&) {
      out.one_sided = true;
    }
  }
  if (used == 0) {
    throw EmptySliceError("lip_estimate: no neighbouring slice meets the window");
  }
  out.infinite = out.value > options.lip_cap;
  return out;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
  require(lo > 0.0 && hi > lo, "geometric grid needs 0 < lo < hi");
  require(count >= 2, "geometric grid needs at least two knots");
  std::vector<double> g(count);
  const double q = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = lo * std::exp(q * static_cast<double>(i));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

TalwegProfile talweg_profile(const SetFamily& family, const Region& region,
                             const std::vector<double>& r_grid,
                             const TalwegOptions& options) {
  require(!r_grid.empty(), "talweg_profile: empty grid");
  for (std::size_t i = 1; i < r_grid.size(); ++i) {
    require(r_grid[i] > r_grid[i - 1], "talweg_profile: grid must increase");
  }
  require_dimension(family.dimension(), region.dimension(), "talweg_profile");
  const std::size_t n = r_grid.size();
  TalwegProfile p;
  p.r = r_grid;
  p.phi.assign(n, 0.0);
  p.infinite.assign(n, false);
  p.empty.assign(n, false);
  p.witness.assign(n, std::nullopt);

  // Workers write only their own index; the flags are copied out at the end
  // because std::vector<bool> packs bits.
  std::vector<char> infinite(n, 0), empty(n, 0);
  const StreamKey key = StreamKey(options.seed).split("talweg");
  detail::parallel_for(n, options.threads, [&](std::size_t i) {
    const double r = r_grid[i];
    SliceSamples s;
    try {
      s = sample_boundary(family, r, region, options.samples,
                          key.split(static_cast<std::uint64_t>(i)).value());
    } catch (const DomainError&) {
      empty[i] = 1;
      return;
    }
    if (s.points.empty()) {
      empty[i] = 1;
      return;
    }
    double best = -1.0;
    for (const Vec& x : s.points) {
      const LipEstimate e = lip_estimate(family, r, x, options.lip);
      if (e.infinite) infinite[i] = 1;
      if (e.value > best) {
        best = e.value;
        p.witness[i] = x;
      }
    }
    p.phi[i] = best;
  });
  for (std::size_t i = 0; i < n; ++i) {
    p.infinite[i] = infinite[i] != 0;
    p.empty[i] = empty[i] != 0;
  }
  if (std::all_of(empty.begin(), empty.end(), [](char e) { return e != 0; })) {
    throw EmptySliceError("talweg_profile: S(r) ∩ U is empty at every knot");
  }
  return p;
}

// ---------------------------------------------------------------------------
// DesingMap
// ---------------------------------------------------------------------------

DesingMap desingularize(const TalwegProfile& profile, double a) {
  require(profile.size() >= 2, "desingularize: need at least two knots");
  require(std::isfinite(a), "desingularize: a must be finite");
  DesingMap m;
  m.a_ = a;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile.r[i] < a) continue;
    if (profile.infinite[i]) {
      throw UnremovableSingularityError(
          "talweg is numerically infinite at r = " + std::to_string(profile.r[i]) +
          "; split the window at this knot");
    }
    if (profile.empty[i]) continue;
    m.r_.push_back(profile.r[i]);
    m.phi_.push_back(std::max(0.0, profile.phi[i]));
  }
  require(m.r_.size() >= 2, "desingularize: fewer than two usable knots right of a");
  const std::size_t n = m.r_.size();

  // Head segment [a, r_0].
  double head = 0.0;
  const double gap = m.r_.front() - a;
  if (gap > 0.0) {
    m.has_head_ = true;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < n && lx.size() < 4; ++i) {
      if (m.phi_[i] <= 0.0) break;
      lx.push_back(std::log(m.r_[i] - a));
      ly.push_back(std::log(m.phi_[i]));
    }
    if (lx.size() >= 2) {
      const double k = static_cast<double>(lx.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
      }
      const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
      m.beta_ = -slope;
      m.head_c_ = std::exp((sy - slope * sx) / k);
    } else {
      m.beta_ = 0.0;
      m.head_c_ = m.phi_.front();
    }
    if (m.beta_ >= 1.0 - 1e-9) {
      throw UnremovableSingularityError(
          "talweg singularity at a is not integrable (fitted exponent " +
          std::to_string(m.beta_) + ")");
    }
    head = m.head_c_ * std::pow(gap, 1.0 - m.beta_) / (1.0 - m.beta_);
  }

  m.Phi_.resize(n);
  m.Phi_[0] = a + head;
  for (std::size_t i = 1; i < n; ++i) {
    m.Phi_[i] = m.Phi_[i - 1] + 0.5 * (m.r_[i] - m.r_[i - 1]) * (m.phi_[i - 1] + m.phi_[i]);
  }

  // Grid-doubling check: trapezoid on every other knot over the same span.
  if (n >= 3) {
    const std::size_t last = (n - 1) % 2 == 0 ? n - 1 : n - 2;
    double coarse = 0.0;
    for (std::size_t i = 2; i <= last; i += 2) {
      coarse += 0.5 * (m.r_[i] - m.r_[i - 2]) * (m.phi_[i - 2] + m.phi_[i]);
    }
    const double fine = m.Phi_[last] - m.Phi_[0];
    m.quadrature_error_ = std::abs(fine - coarse) / 3.0;
  }

  m.forward_ = MonotoneCubic(m.r_, m.Phi_);
  m.phi_interp_ = MonotoneCubic(m.r_, m.phi_);
  std::vector<double> s, r;
  for (std::size_t i = 0; i < n; ++i) {
    if (!s.empty() && m.Phi_[i] <= s.back()) continue;  // plateaus where φ = 0
    s.push_back(m.Phi_[i]);
    r.push_back(m.r_[i]);
  }
  if (s.size() < 2) {
    throw UnremovableSingularityError("desingularize: Φ is constant on the window (φ ≡ 0)");
  }
  m.inverse_ = MonotoneCubic(std::move(s), std::move(r));
  return m;
}

double DesingMap::Phi(double r) const {
  if (!(r >= a_ && r <= r_.back())) {
    throw DomainError("Φ: r = " + std::to_string(r) + " outside [a, r_last]");
  }
  if (r < r_.front()) {
    return a_ + head_c_ * std::pow(r - a_, 1.0 - beta_) / (1.0 - beta_);
  }
  return forward_(r);
}

double DesingMap::Psi(double s) const {
  const double hi = Phi_.back();
  if (!(s >= a_ && s <= hi)) {
    throw DomainError("Ψ: s = " + std::to_string(s) + " outside [a, Φ(r_last)]");
  }
  if (s == a_) return a_;
  if (s < Phi_.front()) {
    if (head_c_ <= 0.0) return r_.front();
    return a_ + std::pow((s - a_) * (1.0 - beta_) / head_c_, 1.0 / (1.0 - beta_));
  }
  return std::clamp(inverse_(s), r_.front(), r_.back());
}

double DesingMap::phi(double r) const {
  if (has_head_ && r < r_.front() && r > a_) {
    return head_c_ * std::pow(r - a_, -beta_);
  }
  return phi_interp_(r);
}

DesingCheck verify_desingularized(const SetFamily& family, const DesingMap& map,
                                  const Region& region,
                                  const std::vector<double>& probes,
                                  int points_per_probe,
                                  const LipOptions& options) {
  require(!probes.empty(), "verify_desingularized: no probes");
  for (double tau : probes) {
    if (!(tau >= map.psi_lo() && tau <= map.psi_hi())) {
      throw DomainError("verify_desingularized: probe " + std::to_string(tau) +
                        " outside the map domain");
    }
  }
  auto shared = std::make_shared<const DesingMap>(map);
  const SetFamily composed = family.reparametrized([shared](double tau) {
    if (!(tau >= shared->psi_lo() && tau <= shared->psi_hi())) return kNaN;
    return shared->Psi(tau);
  });

  DesingCheck out;
  out.probes = probes;
  out.composed_lip.assign(probes.size(), 0.0);
  std::vector<std::vector<double>> ratios(probes.size());
  const StreamKey key = StreamKey(options.seed).split("verify_desingularized");
  detail::parallel_for(probes.size(), 0, [&](std::size_t j) {
    const double tau = probes[j];
    const double r = map.Psi(tau);
    const SliceSamples s = sample_boundary(family, r, region, points_per_probe,
                                           key.split(static_cast<std::uint64_t>(j)).value());
    if (s.points.empty()) {
      throw EmptySliceError("verify_desingularized: empty slice at probe " +
                            std::to_string(tau));
    }
    const double phi = map.phi(r);
    for (const Vec& x : s.points) {
      const LipEstimate composed_lip = lip_estimate(composed, tau, x, options);
      const LipEstimate raw_lip = lip_estimate(family, r, x, options);
      out.composed_lip[j] = std::max(out.composed_lip[j], composed_lip.value);
      if (raw_lip.value > 0.0) {
        ratios[j].push_back(composed_lip.value * phi / raw_lip.value);
      }
    }
  });
  out.max_lip = *std::max_element(out.composed_lip.begin(), out.composed_lip.end());
  out.min_ratio = kInf;
  out.max_ratio = -kInf;
  for (const auto& rs : ratios) {
    for (double q : rs) {
      out.chain_ratio.push_back(q);
      out.min_ratio = std::min(out.min_ratio, q);
      out.max_ratio = std::max(out.max_ratio, q);
    }
  }
  if (out.chain_ratio.empty()) out.min_ratio = out.max_ratio = kNaN;
  return out;
}

// ---------------------------------------------------------------------------
// Speed checks
// ---------------------------------------------------------------------------

namespace {

constexpr double kZeroLip = 1e-12;
constexpr double kZeroSpeed = 1e-8;

template <class Ratio>
SpeedBoundReport speed_report(const Trajectory& traj, Ratio&& ratio_at) {
  SpeedBoundReport out;
  const std::size_t steps = traj.steps();
  out.ratios.assign(steps, kNaN);
  out.lips.assign(steps, kNaN);
  std::vector<char> violation(steps, 0);
  detail::parallel_for(steps, 0, [&](std::size_t k) {
    if (traj.is_breakpoint(k + 1)) return;
    const auto [ratio, lip, bad] = ratio_at(k);
    out.ratios[k] = ratio;
    out.lips[k] = lip;
    violation[k] = bad ? 1 : 0;
  });
  for (std::size_t k = 0; k < steps; ++k) {
    if (std::isnan(out.ratios[k])) {
      ++out.excluded;
      continue;
    }
    if (violation[k]) out.violations.push_back(k);
    out.max_ratio = std::max(out.max_ratio, out.ratios[k]);
  }
  return out;
}

struct StepRatio {
  double ratio;
  double lip;
  bool violation;
};

StepRatio ratio_from(double scaled_speed, double lip) {
  if (lip <= kZeroLip) {
    if (scaled_speed <= kZeroSpeed) return {0.0, lip, false};
    return {kInf, lip, true};
  }
  return {scaled_speed / lip, lip, false};
}

}  // namespace

SpeedBoundReport verify_speed_bound(const Trajectory& trajectory,
                                    const SetFamily& family,
                                    const LipOptions& options) {
  return speed_report(trajectory, [&](std::size_t k) {
    const LipEstimate lip =
        lip_estimate(family, trajectory.times[k], trajectory.points[k], options);
    return ratio_from(trajectory.step_speeds[k], lip.value);
  });
}

SpeedBoundReport verify_monotone_bound(const Trajectory& trajectory,
                                       const VectorField& field,
                                       const SetFamily& family,
                                       const LipOptions& options) {
  const auto affine = field.as_scaled_identity();
  if (!affine || affine->scale == 0.0) {
    throw UnsupportedError(
        "verify_monotone_bound: F must be an invertible map a·x + c");
  }
  const double alpha = field.monotonicity_alpha().value_or(std::abs(affine->scale));
  return speed_report(trajectory, [&](std::size_t k) {
    const Vec y = field(trajectory.points[k]);
    const LipEstimate lip = lip_estimate(family, trajectory.times[k], y, options);
    return ratio_from(alpha * trajectory.step_speeds[k], lip.value);
  });
}

}  // namespace sweep
