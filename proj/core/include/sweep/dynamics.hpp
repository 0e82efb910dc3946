#pragma once

#include "sweep/polynomial.hpp"
#include "sweep/projection.hpp"
#include "sweep/region.hpp"
#include "sweep/set_family.hpp"
#include "sweep/trajectory.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sweep {

/// Polynomial vector field F: R^n -> R^n.
class VectorField {
 public:
  VectorField(std::vector<Polynomial> components,
              std::optional<double> monotonicity_alpha = std::nullopt);

  int dimension() const { return static_cast<int>(components_.size()); }
  const std::vector<Polynomial>& components() const { return components_; }
  const std::optional<double>& monotonicity_alpha() const { return alpha_; }

  Vec operator()(const Vec& x) const;
  Mat jacobian(const Vec& x) const;

  /// Smallest sampled ratio <F(x)-F(y), x-y> / ‖x-y‖^2 over random pairs in
  /// the region.
  double sampled_monotonicity(const Region& region, int pairs,
                              std::uint64_t seed) const;
  /// Throws InputError when a declared alpha is contradicted by sampling.
  void validate_monotonicity(const Region& region, int pairs,
                             std::uint64_t seed) const;

  /// If F(x) = a x + c with scalar a, returns (a, c).
  struct ScaledIdentity {
    double scale;
    Vec offset;
  };
  std::optional<ScaledIdentity> as_scaled_identity() const;

 private:
  std::vector<Polynomial> components_;
  std::optional<double> alpha_;
};

struct CatchUpOptions {
  /// Steps longer than jump_factor * max(L_est, 1) * h are restarts.
  double jump_factor = 20.0;
  /// Regular steps in the running-median window.
  std::size_t median_window = 64;
  /// Regular steps required before jumps are detected.
  std::size_t min_history = 4;
  /// Extra Newton starts when a projection fails to converge.
  int retry_extra_starts = 4;
  ProjectionOptions projection;
};

/// Uniform grid t_k = t0 + k h on [t0, t_end]; the final node is t_end.
std::vector<double> uniform_grid(double t0, double t_end, double h);

/// Catching-up scheme x_{k+1} = P_{S(t_{k+1})}(x_k).
///
/// An infeasible x0 is first projected onto S(t0); that distance becomes
/// the trajectory's initial_offset and is not a step. Jumps flagged as
/// breakpoints continue from the projected point.
Trajectory catch_up(const SetFamily& family, const Vec& x0, double t0,
                    double t_end, double h, const CatchUpOptions& options = {});

/// Catching-up for  γ' ∈ -N_{S(t)}(F(γ))  with F(x) = a x + c, a > 0: the
/// constraint is pulled back through F, i.e. F(γ_{k+1}) = P_{S}(F(γ_k)).
/// Throws UnsupportedError for any other F.
Trajectory catch_up_monotone(const SetFamily& family, const VectorField& field,
                             const Vec& x0, double t0, double t_end, double h,
                             const CatchUpOptions& options = {});

struct LengthSample {
  double h = 0.0;
  double length = 0.0;
  std::size_t breakpoints = 0;
  TrajectoryStatus status = TrajectoryStatus::Completed;
};

struct LengthStudy {
  std::vector<LengthSample> samples;
  /// |L(h_i) - L(h_{i+1})|.
  std::vector<double> gaps;

  bool gaps_strictly_decreasing() const;
};

/// Discrete lengths under successive halving of h (at least three steps).
LengthStudy length_study(const SetFamily& family, const Vec& x0, double t0,
                         double t_end, const std::vector<double>& h_list,
                         const CatchUpOptions& options = {});

/// Classical RK4 for x' = F(x) on [t0, t_end].
Trajectory ode_orbit(const VectorField& field, const Vec& x0, double t_end,
                     double h, double t0 = 0.0,
                     double divergence_threshold = 1e12);

struct InclusionCheck {
  double max_residual = 0.0;
  std::size_t checked = 0;
  /// Nodes where F(γ) = 0 (equilibria).
  std::size_t skipped = 0;
};

/// For each interior node, the fraction of the centered-difference velocity
/// orthogonal to span{F(γ(t_k))}, the normal space of x + F(x)^⊥ at x.
InclusionCheck verify_state_dependent_inclusion(const Trajectory& trajectory,
                                                const VectorField& field);

}  // namespace sweep
