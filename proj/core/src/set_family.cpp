#include "sweep/set_family.hpp"

#include "sweep/errors.hpp"
#include "sweep/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sweep {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

double halfspace_violation(const HalfspaceSlice& h, const Vec& x) {
  const double n = h.normal.norm();
  if (n == 0.0) return h.offset >= 0.0 ? -kInf : kInf;
  return (h.normal.dot(x) - h.offset) / n;
}

}  // namespace

// ---------------------------------------------------------------------------
// Slice
// ---------------------------------------------------------------------------

bool Slice::contains(const Vec& x) const {
  require_dimension(dimension_, x.size(), "membership");
  return std::visit(
      overloaded{
          [&](const BallSlice& b) {
            return b.radius >= 0.0 && (x - b.center).norm() <= b.radius;
          },
          [&](const HalfspaceSlice& h) { return h.normal.dot(x) <= h.offset; },
          [&](const PolytopeSlice& p) {
            return std::all_of(p.faces.begin(), p.faces.end(),
                               [&](const HalfspaceSlice& h) {
                                 return h.normal.dot(x) <= h.offset;
                               });
          },
          [&](const SublevelSlice& s) { return s.value(x) <= s.level; },
          [&](const IntersectionSlice& s) {
            return std::all_of(s.members.begin(), s.members.end(),
                               [&](const Slice& m) { return m.contains(x); });
          },
      },
      v_);
}

double Slice::violation(const Vec& x) const {
  require_dimension(dimension_, x.size(), "violation");
  return std::visit(
      overloaded{
          [&](const BallSlice& b) {
            return b.radius < 0.0 ? kInf : (x - b.center).norm() - b.radius;
          },
          [&](const HalfspaceSlice& h) { return halfspace_violation(h, x); },
          [&](const PolytopeSlice& p) {
            double v = -kInf;
            for (const auto& h : p.faces) v = std::max(v, halfspace_violation(h, x));
            return v;
          },
          [&](const SublevelSlice& s) {
            const auto vg = s.value_gradient(x);
            const double g = vg.value - s.level;
            const double n = vg.gradient.norm();
            return n > 0.0 ? g / n : g;
          },
          [&](const IntersectionSlice& s) {
            double v = -kInf;
            for (const auto& m : s.members) v = std::max(v, m.violation(x));
            return v;
          },
      },
      v_);
}

bool Slice::trivially_empty() const {
  return std::visit(
      overloaded{
          [](const BallSlice& b) { return b.radius < 0.0; },
          [](const HalfspaceSlice& h) {
            return h.normal.norm() == 0.0 && h.offset < 0.0;
          },
          [](const PolytopeSlice& p) {
            return std::any_of(p.faces.begin(), p.faces.end(),
                               [](const HalfspaceSlice& h) {
                                 return h.normal.norm() == 0.0 && h.offset < 0.0;
                               });
          },
          [](const SublevelSlice&) { return false; },
          [](const IntersectionSlice& s) {
            return std::any_of(s.members.begin(), s.members.end(),
                               [](const Slice& m) { return m.trivially_empty(); });
          },
      },
      v_);
}

Slice Slice::translated(const Vec& shift) const {
  require_dimension(dimension_, shift.size(), "slice translation");
  auto shift_face = [&](HalfspaceSlice h) {
    h.offset += h.normal.dot(shift);
    return h;
  };
  Variant out = std::visit(
      overloaded{
          [&](const BallSlice& b) -> Variant {
            return BallSlice{b.center + shift, b.radius};
          },
          [&](const HalfspaceSlice& h) -> Variant { return shift_face(h); },
          [&](const PolytopeSlice& p) -> Variant {
            PolytopeSlice q;
            for (const auto& h : p.faces) q.faces.push_back(shift_face(h));
            return q;
          },
          [&](const SublevelSlice& s) -> Variant {
            return SublevelSlice{s.poly, s.level, s.shift + shift};
          },
          [&](const IntersectionSlice& s) -> Variant {
            IntersectionSlice q;
            for (const auto& m : s.members) q.members.push_back(m.translated(shift));
            return q;
          },
      },
      v_);
  return Slice(dimension_, std::move(out));
}

// ---------------------------------------------------------------------------
// SetFamily
// ---------------------------------------------------------------------------

SetFamily::SetFamily(int dimension, std::shared_ptr<const Node> node)
    : dimension_(dimension), node_(std::move(node)) {}

SetFamily::SetFamily(MovingBall v) : dimension_(v.center.dimension()) {
  require(dimension_ >= 1, "moving ball needs a center curve");
  node_ = std::make_shared<const Node>(std::move(v));
}

SetFamily::SetFamily(MovingHalfspace v) : dimension_(v.normal.dimension()) {
  require(dimension_ >= 1, "moving half-space needs a normal curve");
  node_ = std::make_shared<const Node>(std::move(v));
}

SetFamily::SetFamily(MovingPolytope v) : dimension_(0) {
  require(!v.faces.empty(), "moving polytope needs at least one face");
  dimension_ = v.faces.front().normal.dimension();
  require(dimension_ >= 1, "moving polytope faces need normal curves");
  for (const auto& f : v.faces) {
    require_dimension(dimension_, f.normal.dimension(), "polytope face");
  }
  node_ = std::make_shared<const Node>(std::move(v));
}

SetFamily::SetFamily(Sublevel v) : dimension_(0) {
  require(v.poly != nullptr, "sublevel family needs a polynomial");
  dimension_ = v.poly->dimension();
  node_ = std::make_shared<const Node>(std::move(v));
}

SetFamily::SetFamily(Intersection v) : dimension_(0) {
  require(!v.members.empty(), "intersection needs at least one member");
  dimension_ = v.members.front().dimension();
  for (const auto& m : v.members) {
    require_dimension(dimension_, m.dimension(), "intersection member");
  }
  node_ = std::make_shared<const Node>(std::move(v));
}

SetFamily::SetFamily(Translate v) : dimension_(0) {
  require(v.base != nullptr, "translate needs a base family");
  dimension_ = v.base->dimension();
  require_dimension(dimension_, v.shift.dimension(), "translation shift");
  node_ = std::make_shared<const Node>(std::move(v));
}

SetFamily SetFamily::ball(TimeCurve center, TimeFunction radius) {
  return SetFamily(MovingBall{std::move(center), std::move(radius)});
}

SetFamily SetFamily::static_ball(const Vec& center, double radius) {
  return ball(TimeCurve::constant(center), TimeFunction::constant(radius));
}

SetFamily SetFamily::halfspace(TimeCurve normal, TimeFunction offset) {
  return SetFamily(MovingHalfspace{std::move(normal), std::move(offset)});
}

SetFamily SetFamily::lower_bound(int dimension, int axis, TimeFunction offset) {
  require(axis >= 0 && axis < dimension, "lower_bound axis out of range");
  Vec n = Vec::Zero(dimension);
  n[axis] = -1.0;
  // x[axis] >= o(t)  <=>  -x[axis] <= -o(t)
  std::vector<std::vector<double>> pieces = offset.pieces();
  for (auto& p : pieces) {
    for (auto& c : p) c = -c;
  }
  return halfspace(TimeCurve::constant(n),
                   TimeFunction(offset.breaks(), std::move(pieces)));
}

SetFamily SetFamily::sublevel(Polynomial p, TimeFunction level) {
  return SetFamily(Sublevel{std::make_shared<const Polynomial>(std::move(p)),
                            std::move(level)});
}

SetFamily SetFamily::translate(SetFamily base, TimeCurve shift) {
  return SetFamily(Translate{std::make_shared<const SetFamily>(std::move(base)),
                             std::move(shift)});
}

SetFamily SetFamily::reparametrized(TimeMap psi) const {
  SetFamily out(dimension_, node_);
  if (time_map_) {
    auto inner = time_map_;
    out.time_map_ = std::make_shared<const TimeMap>(
        [inner, psi = std::move(psi)](double tau) { return (*inner)(psi(tau)); });
  } else {
    out.time_map_ = std::make_shared<const TimeMap>(std::move(psi));
  }
  return out;
}

Slice SetFamily::at(double t) const {
  if (time_map_) {
    const double s = (*time_map_)(t);
    if (!std::isfinite(s)) {
      throw DomainError("time " + std::to_string(t) +
                        " is outside the reparametrization domain");
    }
    return base_slice(s);
  }
  return base_slice(t);
}

Slice SetFamily::base_slice(double t) const {
  auto face_at = [t](const MovingHalfspace& h) {
    return HalfspaceSlice{h.normal(t), h.offset(t)};
  };
  const int n = dimension_;
  return std::visit(
      overloaded{
          [&](const MovingBall& b) {
            return Slice(n, BallSlice{b.center(t), b.radius(t)});
          },
          [&](const MovingHalfspace& h) { return Slice(n, face_at(h)); },
          [&](const MovingPolytope& p) {
            PolytopeSlice s;
            for (const auto& f : p.faces) s.faces.push_back(face_at(f));
            return Slice(n, std::move(s));
          },
          [&](const Sublevel& s) {
            return Slice(n, SublevelSlice{s.poly, s.level(t), Vec::Zero(n)});
          },
          [&](const Intersection& s) {
            IntersectionSlice out;
            for (const auto& m : s.members) {
              Slice ms = m.at(t);
              if (auto* nested = std::get_if<IntersectionSlice>(&ms.variant())) {
                out.members.insert(out.members.end(), nested->members.begin(),
                                   nested->members.end());
              } else {
                out.members.push_back(std::move(ms));
              }
            }
            return Slice(n, std::move(out));
          },
          [&](const Translate& s) { return s.base->at(t).translated(s.shift(t)); },
      },
      *node_);
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

bool membership(const SetFamily& family, double t, const Vec& x) {
  require_dimension(family.dimension(), x.size(), "membership");
  return family.at(t).contains(x);
}

SliceSamples sample_boundary(const Slice& slice, const Region& region,
                             int count, std::uint64_t seed,
                             const SampleOptions& options) {
  require(count >= 1, "sample_boundary: count must be at least 1");
  require_dimension(slice.dimension(), region.dimension(), "sample_boundary");
  SliceSamples out;
  if (slice.trivially_empty()) {
    out.possibly_empty = true;
    return out;
  }
  Rng rng(StreamKey(seed).split("sample_boundary"));
  const int n = slice.dimension();
  const long budget = std::max<long>(options.min_tries,
                                     static_cast<long>(options.tries_per_point) * count);
  const double reach = region.diameter();
  for (long tries = 0;
       tries < budget && static_cast<int>(out.points.size()) < count; ++tries) {
    Vec p = region.sample(rng);
    if (!slice.contains(p)) continue;
    if (static_cast<int>(out.interior.size()) < 4 * count) out.interior.push_back(p);
    Vec d = rng.direction(n);
    double lo = 0.0;
    double hi = reach;
    // The set must end before the ray leaves the region's reach.
    if (slice.contains(p + hi * d)) continue;
    while (hi - lo > options.boundary_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (slice.contains(p + mid * d)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    Vec x = p + lo * d;
    if (!region.contains(x)) continue;
    out.points.push_back(std::move(x));
    out.directions.push_back(std::move(d));
  }
  out.possibly_empty = out.interior.empty();
  return out;
}

SliceSamples sample_boundary(const SetFamily& family, double t,
                             const Region& region, int count,
                             std::uint64_t seed, const SampleOptions& options) {
  require_dimension(family.dimension(), region.dimension(), "sample_boundary");
  return sample_boundary(family.at(t), region, count, seed, options);
}

}  // namespace sweep
