#pragma once

#include "sweep/polynomial.hpp"
#include "sweep/region.hpp"
#include "sweep/time_function.hpp"
#include "sweep/types.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

namespace sweep {

// ---------------------------------------------------------------------------
// Static slices S(t) for a fixed t.
// ---------------------------------------------------------------------------

class Slice;

/// Closed ball; a negative radius encodes the empty set.
struct BallSlice {
  Vec center;
  double radius = 0.0;
};

/// {x : <normal, x> <= offset}. `normal` is the outward normal.
/// A zero normal means R^n (offset >= 0) or the empty set (offset < 0).
struct HalfspaceSlice {
  Vec normal;
  double offset = 0.0;
};

struct PolytopeSlice {
  std::vector<HalfspaceSlice> faces;
};

/// {x : p(x - shift) <= level}.
struct SublevelSlice {
  std::shared_ptr<const Polynomial> poly;
  double level = 0.0;
  Vec shift;

  double value(const Vec& x) const { return poly->value(x - shift); }
  ValueGradient value_gradient(const Vec& x) const {
    return poly->value_gradient(x - shift);
  }
  Mat hessian(const Vec& x) const { return poly->hessian(x - shift); }
};

struct IntersectionSlice {
  std::vector<Slice> members;
};

class Slice {
 public:
  using Variant = std::variant<BallSlice, HalfspaceSlice, PolytopeSlice,
                               SublevelSlice, IntersectionSlice>;

  Slice(int dimension, Variant v) : dimension_(dimension), v_(std::move(v)) {}

  int dimension() const { return dimension_; }
  const Variant& variant() const { return v_; }

  /// Exact evaluation of every defining inequality (tolerance 0).
  bool contains(const Vec& x) const;
  /// Largest constraint violation, in distance units where the constraint
  /// admits it (first-order estimate for sublevel constraints); <= 0 inside.
  double violation(const Vec& x) const;
  /// True when emptiness is decidable from the data alone (negative radius,
  /// infeasible zero-normal half-space).
  bool trivially_empty() const;

  Slice translated(const Vec& shift) const;

 private:
  int dimension_;
  Variant v_;
};

// ---------------------------------------------------------------------------
// Time-indexed families t -> S(t).
// ---------------------------------------------------------------------------

class SetFamily;

struct MovingBall {
  TimeCurve center;
  TimeFunction radius;
};

/// {x : <normal(t), x> <= offset(t)}.
struct MovingHalfspace {
  TimeCurve normal;
  TimeFunction offset;
};

struct MovingPolytope {
  std::vector<MovingHalfspace> faces;
};

/// {x : p(x) <= level(t)}.
struct Sublevel {
  std::shared_ptr<const Polynomial> poly;
  TimeFunction level;
};

struct Intersection {
  std::vector<SetFamily> members;
};

/// S(t) = base(t) + shift(t).
struct Translate {
  std::shared_ptr<const SetFamily> base;
  TimeCurve shift;
};

/// Semi-algebraic set-valued map S: R ⇉ R^n with piecewise-polynomial time
/// dependence. Immutable; copies share structure.
class SetFamily {
 public:
  using Node = std::variant<MovingBall, MovingHalfspace, MovingPolytope,
                            Sublevel, Intersection, Translate>;
  using TimeMap = std::function<double(double)>;

  SetFamily(MovingBall v);
  SetFamily(MovingHalfspace v);
  SetFamily(MovingPolytope v);
  SetFamily(Sublevel v);
  SetFamily(Intersection v);
  SetFamily(Translate v);

  // Shorthands for common shapes.
  static SetFamily ball(TimeCurve center, TimeFunction radius);
  static SetFamily static_ball(const Vec& center, double radius);
  static SetFamily halfspace(TimeCurve normal, TimeFunction offset);
  /// {x : x[axis] >= offset(t)}.
  static SetFamily lower_bound(int dimension, int axis, TimeFunction offset);
  static SetFamily sublevel(Polynomial p, TimeFunction level);
  static SetFamily translate(SetFamily base, TimeCurve shift);

  int dimension() const { return dimension_; }
  const Node& node() const { return *node_; }

  /// The slice S(t). Throws DomainError when a time map rejects t.
  Slice at(double t) const;

  /// S∘ψ : τ -> S(ψ(τ)). `psi` may throw DomainError outside its domain.
  SetFamily reparametrized(TimeMap psi) const;
  bool has_time_map() const { return static_cast<bool>(time_map_); }

 private:
  SetFamily(int dimension, std::shared_ptr<const Node> node);
  Slice base_slice(double t) const;

  int dimension_;
  std::shared_ptr<const Node> node_;
  std::shared_ptr<const TimeMap> time_map_;
};

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------

/// x ∈ S(t), evaluated exactly on computed values.
bool membership(const SetFamily& family, double t, const Vec& x);

struct SampleOptions {
  double boundary_tol = kBoundaryTol;
  /// Interior candidates drawn per requested point before giving up.
  int tries_per_point = 256;
  int min_tries = 4096;
};

/// Points of S ∩ region. `points` are within boundary_tol of the complement
/// of S along `directions[i]`; `interior` are the rejection-sampled seeds.
struct SliceSamples {
  std::vector<Vec> points;
  std::vector<Vec> directions;
  std::vector<Vec> interior;
  bool possibly_empty = false;
};

/// Rejection sampling in `region`, then bisection toward the boundary along
/// random directions. Deterministic for a fixed seed.
SliceSamples sample_boundary(const Slice& slice, const Region& region,
                             int count, std::uint64_t seed,
                             const SampleOptions& options = {});
SliceSamples sample_boundary(const SetFamily& family, double t,
                             const Region& region, int count,
                             std::uint64_t seed,
                             const SampleOptions& options = {});

}  // namespace sweep
