#pragma once

#include "sweep/dynamics.hpp"
#include "sweep/monotone_interp.hpp"
#include "sweep/projection.hpp"
#include "sweep/region.hpp"
#include "sweep/set_family.hpp"
#include "sweep/trajectory.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace sweep {

// ---------------------------------------------------------------------------
// Outer norms of positively homogeneous set-valued maps.
// ---------------------------------------------------------------------------

/// A positively homogeneous map L: R^n ⇉ R^m given by finitely many values.
using HomogeneousMap = std::function<std::vector<Vec>(const Vec&)>;

/// |L|^+ = sup_{‖x‖ = 1} sup_{y ∈ L(x)} ‖y‖, over the unit sphere (exact
/// {-1, +1} in R^1, `directions` random unit vectors otherwise).
double outer_norm(const HomogeneousMap& map, int dimension, int directions = 256,
                  std::uint64_t seed = 0);

/// |L^{-1}|^+ = 1 / inf_{‖x‖ = 1} dist(0, L(x)); +inf when some L(x) ∋ 0.
double inverse_outer_norm(const HomogeneousMap& map, int dimension,
                          int directions = 256, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Lipschitz modulus of t ⇉ S(t).
// ---------------------------------------------------------------------------

struct LipOptions {
  double dt = 1e-4;
  double radius = 0.1;
  /// Boundary points of S(τ) ∩ Ball(x, radius) per neighbouring time.
  int samples = 16;
  double lip_cap = 1e6;
  /// Slack allowed when checking x ∈ S(t).
  double membership_tol = 1e-8;
  std::uint64_t seed = 0;
  ProjectionOptions projection;
};

struct LipEstimate {
  double value = 0.0;
  /// Sampled ratio exceeded lip_cap; `value` then holds the capped ratio.
  bool infinite = false;
  double t = 0.0;
  Vec x;
  double dt_used = 0.0;
  double radius_used = 0.0;
  /// Some neighbouring times were outside the domain or gave empty slices.
  bool one_sided = false;
};

/// sup_{x ∈ S(t_from) ∩ region} dist(x, S(t_to)) over sampled boundary and
/// interior points of S(t_from) ∩ region. Throws EmptySliceError when either
/// slice is empty.
double excess(const SetFamily& family, double t_from, double t_to,
              const Region& region, int samples, std::uint64_t seed,
              const ProjectionOptions& projection = {});

/// max over τ ∈ {t ± dt, t ± dt/2} of excess(τ → t, Ball(x, radius)) / |τ - t|.
LipEstimate lip_estimate(const SetFamily& family, double t, const Vec& x,
                         const LipOptions& options = {});

// ---------------------------------------------------------------------------
// Talweg and desingularization.
// ---------------------------------------------------------------------------

struct TalwegProfile {
  std::vector<double> r;
  std::vector<double> phi;
  std::vector<bool> infinite;
  /// No point of S(r) ∩ U was found at this knot.
  std::vector<bool> empty;
  std::vector<std::optional<Vec>> witness;

  std::size_t size() const { return r.size(); }
};

struct TalwegOptions {
  int samples = 64;
  std::uint64_t seed = 0;
  LipOptions lip;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
};

/// φ(r_i) = max of lip_estimate over boundary samples of S(r_i) ∩ region.
/// Knots are evaluated concurrently and merged by index.
TalwegProfile talweg_profile(const SetFamily& family, const Region& region,
                             const std::vector<double>& r_grid,
                             const TalwegOptions& options = {});

/// `count` knots geometrically spaced on [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, std::size_t count);

/// Φ(r) = a + ∫_a^r φ and Ψ = Φ^{-1}.
///
/// Φ is trapezoid quadrature on the profile knots. When a lies left of the
/// first knot, the gap [a, r_0] is integrated with a power law
/// φ ≈ c (r - a)^{-β} fitted on the leading knots (β < 1 required). Ψ is the
/// monotone cubic through (Φ_i, r_i) and the analytic inverse of the power
/// law on the head segment, so Ψ(a) = a exactly.
class DesingMap {
 public:
  double a() const { return a_; }
  const std::vector<double>& knots() const { return r_; }
  const std::vector<double>& Phi_knots() const { return Phi_; }
  double quadrature_error() const { return quadrature_error_; }
  double head_exponent() const { return beta_; }
  bool has_head() const { return has_head_; }

  /// Domain of Ψ: [a, Φ(r_last)].
  double psi_lo() const { return a_; }
  double psi_hi() const { return Phi_.back(); }
  /// Domain of Φ: [a, r_last].
  double phi_hi() const { return r_.back(); }

  double Phi(double r) const;
  double Psi(double s) const;
  /// φ interpolated from the profile (monotone cubic in log-log where
  /// possible), used by the chain-rule cross-check.
  double phi(double r) const;

 private:
  friend DesingMap desingularize(const TalwegProfile&, double);

  double a_ = 0.0;
  std::vector<double> r_;
  std::vector<double> Phi_;
  std::vector<double> phi_;
  bool has_head_ = false;
  double head_c_ = 0.0;
  double beta_ = 0.0;
  double quadrature_error_ = 0.0;
  MonotoneCubic forward_;
  MonotoneCubic inverse_;
  MonotoneCubic phi_interp_;
};

/// Throws UnremovableSingularityError when φ is flagged infinite inside the
/// window or the head singularity is not integrable.
DesingMap desingularize(const TalwegProfile& profile, double a);

struct DesingCheck {
  std::vector<double> probes;
  /// Max lip of S∘Ψ at each probe.
  std::vector<double> composed_lip;
  /// Chain-rule ratios lip(S∘Ψ)·φ(Ψ) / lip(S), one per probe point.
  std::vector<double> chain_ratio;
  double max_lip = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  bool pass(double slack = 0.05) const { return max_lip <= 1.0 + slack; }
};

/// lip of τ ⇉ S(Ψ(τ)) at boundary points of each probe slice, plus the
/// chain-rule cross-check against the raw family. Probes must lie in
/// [psi_lo, psi_hi].
DesingCheck verify_desingularized(const SetFamily& family, const DesingMap& map,
                                  const Region& region,
                                  const std::vector<double>& probes,
                                  int points_per_probe = 8,
                                  const LipOptions& options = {});

// ---------------------------------------------------------------------------
// Inequality checks along trajectories.
// ---------------------------------------------------------------------------

struct SpeedBoundReport {
  /// One entry per step; NaN for breakpoint steps.
  std::vector<double> ratios;
  std::vector<double> lips;
  double max_ratio = 0.0;
  /// Steps that moved while the Lipschitz estimate vanished.
  std::vector<std::size_t> violations;
  std::size_t excluded = 0;

  bool pass(double slack = 0.05) const {
    return violations.empty() && max_ratio <= 1.0 + slack;
  }
};

/// ratio_k = step_speed_k / lip(t_k, γ(t_k)); breakpoint steps excluded.
SpeedBoundReport verify_speed_bound(const Trajectory& trajectory,
                                    const SetFamily& family,
                                    const LipOptions& options = {});

/// ratio_k = α · step_speed_k / lip(t_k, F(γ(t_k))) for trajectories of
/// catch_up_monotone. α is the field's declared constant, else its scale.
SpeedBoundReport verify_monotone_bound(const Trajectory& trajectory,
                                       const VectorField& field,
                                       const SetFamily& family,
                                       const LipOptions& options = {});

}  // namespace sweep
