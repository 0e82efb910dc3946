#include "sweep/projection.hpp"

#include "sweep/errors.hpp"
#include "sweep/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sweep {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

ProjectionResult inside(const Vec& x) {
  return ProjectionResult{x, 0.0, std::nullopt, true, 0};
}

ProjectionResult make_result(const Vec& x, Vec y, bool converged,
                             int iterations) {
  ProjectionResult r;
  r.distance = (x - y).norm();
  if (r.distance > 0.0) r.normal = (x - y) / r.distance;
  r.point = std::move(y);
  r.converged = converged;
  r.iterations = iterations;
  return r;
}

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

/// Keeps the nearest candidate; near-ties go to the lexicographically
/// smallest point.
struct BestCandidate {
  std::optional<Vec> point;
  double distance = kInf;

  void offer(const Vec& x, const Vec& y) {
    const double d = (x - y).norm();
    const double tie = 1e-9 * std::max(1.0, std::min(d, distance));
    if (!point || d < distance - tie ||
        (std::abs(d - distance) <= tie && lex_less(y, *point))) {
      point = y;
      distance = d;
    }
  }
};

// --- ball / half-space ------------------------------------------------------

ProjectionResult project_ball(const BallSlice& b, const Vec& x) {
  if (b.radius < 0.0) throw EmptySetError("ball slice has negative radius");
  const Vec d = x - b.center;
  const double n = d.norm();
  if (n <= b.radius) return inside(x);
  ProjectionResult r;
  r.point = b.center + (b.radius / n) * d;
  r.distance = n - b.radius;
  r.normal = d / n;
  return r;
}

ProjectionResult project_halfspace(const HalfspaceSlice& h, const Vec& x) {
  const double nn = h.normal.squaredNorm();
  if (nn == 0.0) {
    if (h.offset < 0.0) throw EmptySetError("infeasible zero-normal half-space");
    return inside(x);
  }
  const double v = h.normal.dot(x) - h.offset;
  if (v <= 0.0) return inside(x);
  ProjectionResult r;
  r.point = x - (v / nn) * h.normal;
  r.distance = v / std::sqrt(nn);
  r.normal = h.normal / std::sqrt(nn);
  return r;
}

// --- polytope: active-set enumeration --------------------------------------

bool next_combination(std::vector<int>& idx, int m) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < m - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double binomial(int m, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (m - k + i) / i;
  return c;
}

ProjectionResult project_polytope(const PolytopeSlice& p, const Vec& x) {
  std::vector<const HalfspaceSlice*> faces;
  for (const auto& f : p.faces) {
    if (f.normal.squaredNorm() == 0.0) {
      if (f.offset < 0.0) throw EmptySetError("infeasible zero-normal face");
      continue;
    }
    faces.push_back(&f);
  }
  auto feasible = [&](const Vec& y, double tol) {
    return std::all_of(faces.begin(), faces.end(), [&](const HalfspaceSlice* f) {
      return f->normal.dot(y) - f->offset <= tol * f->normal.norm();
    });
  };
  if (feasible(x, 0.0)) return inside(x);

  const int m = static_cast<int>(faces.size());
  const int n = static_cast<int>(x.size());
  const int kmax = std::min(n, m);
  double combos = 0.0;
  for (int k = 1; k <= kmax; ++k) combos += binomial(m, k);
  if (combos > 2e6) {
    throw UnsupportedError("polytope projection: too many facet subsets");
  }

  const double scale = std::max(1.0, x.norm());
  const double tol = 1e-12 * scale;
  BestCandidate best;
  int visited = 0;
  for (int k = 1; k <= kmax; ++k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    do {
      ++visited;
      Mat N(k, n);
      Vec b(k);
      for (int i = 0; i < k; ++i) {
        N.row(i) = faces[idx[i]]->normal.transpose();
        b[i] = faces[idx[i]]->offset;
      }
      const Mat G = N * N.transpose();
      Eigen::FullPivLU<Mat> lu(G);
      if (lu.rank() < k) continue;
      const Vec lambda = lu.solve(N * x - b);
      if ((lambda.array() < -tol).any()) continue;
      const Vec y = x - N.transpose() * lambda;
      if (!feasible(y, tol)) continue;
      best.offer(x, y);
    } while (next_combination(idx, m));
  }
  if (!best.point) throw EmptySetError("polytope slice is empty");
  return make_result(x, *best.point, true, visited);
}

// --- smooth constraint atoms (for KKT solves) ------------------------------

/// g(y) <= 0 in native (smooth) form.
struct Atom {
  std::variant<BallSlice, HalfspaceSlice, SublevelSlice> data;

  double value(const Vec& y) const {
    return std::visit(
        overloaded{
            [&](const BallSlice& b) {
              return 0.5 * ((y - b.center).squaredNorm() - b.radius * b.radius);
            },
            [&](const HalfspaceSlice& h) { return h.normal.dot(y) - h.offset; },
            [&](const SublevelSlice& s) { return s.value(y) - s.level; },
        },
        data);
  }
  Vec gradient(const Vec& y) const {
    return std::visit(
        overloaded{
            [&](const BallSlice& b) -> Vec { return y - b.center; },
            [&](const HalfspaceSlice& h) -> Vec { return h.normal; },
            [&](const SublevelSlice& s) -> Vec { return s.value_gradient(y).gradient; },
        },
        data);
  }
  Mat hessian(const Vec& y) const {
    const auto n = y.size();
    return std::visit(
        overloaded{
            [&](const BallSlice&) -> Mat { return Mat::Identity(n, n); },
            [&](const HalfspaceSlice&) -> Mat { return Mat::Zero(n, n); },
            [&](const SublevelSlice& s) -> Mat { return s.hessian(y); },
        },
        data);
  }
  /// Signed violation in distance units (first order for sublevel atoms).
  double violation(const Vec& y) const {
    return std::visit(
        overloaded{
            [&](const BallSlice& b) { return (y - b.center).norm() - b.radius; },
            [&](const HalfspaceSlice& h) {
              const double nn = h.normal.norm();
              if (nn == 0.0) return h.offset >= 0.0 ? -kInf : kInf;
              return (h.normal.dot(y) - h.offset) / nn;
            },
            [&](const SublevelSlice& s) {
              const auto vg = s.value_gradient(y);
              const double g = vg.value - s.level;
              const double gn = vg.gradient.norm();
              return gn > 0.0 ? g / gn : g;
            },
        },
        data);
  }
};

void flatten(const Slice& s, std::vector<Atom>& out) {
  std::visit(overloaded{
                 [&](const BallSlice& b) { out.push_back({b}); },
                 [&](const HalfspaceSlice& h) { out.push_back({h}); },
                 [&](const PolytopeSlice& p) {
                   for (const auto& f : p.faces) out.push_back({f});
                 },
                 [&](const SublevelSlice& q) { out.push_back({q}); },
                 [&](const IntersectionSlice& q) {
                   for (const auto& m : q.members) flatten(m, out);
                 },
             },
             s.variant());
}

struct NewtonOutcome {
  Vec y;
  Vec lambda;
  bool converged = false;
  int iterations = 0;
};

/// Damped Newton on  y - x + sum_i lambda_i grad g_i(y) = 0,  g_i(y) = 0.
NewtonOutcome kkt_newton(const std::vector<const Atom*>& active, const Vec& x,
                         Vec y, Vec lambda, const ProjectionOptions& opt) {
  const auto n = y.size();
  const auto k = static_cast<Eigen::Index>(active.size());
  const double xscale = std::max(1.0, x.norm());

  auto residual = [&](const Vec& yy, const Vec& ll, Vec& F) {
    F.resize(n + k);
    F.head(n) = yy - x;
    for (Eigen::Index i = 0; i < k; ++i) {
      F.head(n) += ll[i] * active[i]->gradient(yy);
      F[n + i] = active[i]->value(yy);
    }
  };
  auto converged_at = [&](const Vec& F, const Vec& yy) {
    if (F.head(n).norm() > opt.kkt_tol * xscale) return false;
    for (Eigen::Index i = 0; i < k; ++i) {
      const double gn = active[i]->gradient(yy).norm();
      const double vscale = std::max(1.0, gn);
      if (std::abs(F[n + i]) > opt.kkt_tol * vscale) return false;
    }
    return true;
  };

  NewtonOutcome out;
  Vec F;
  residual(y, lambda, F);
  double merit = F.squaredNorm();
  for (int it = 0; it < opt.max_newton; ++it) {
    out.iterations = it;
    if (!std::isfinite(merit)) break;
    if (converged_at(F, y)) {
      out.converged = true;
      break;
    }
    Mat J = Mat::Zero(n + k, n + k);
    J.topLeftCorner(n, n).setIdentity();
    for (Eigen::Index i = 0; i < k; ++i) {
      const Vec g = active[i]->gradient(y);
      J.topLeftCorner(n, n) += lambda[i] * active[i]->hessian(y);
      J.block(0, n + i, n, 1) = g;
      J.block(n + i, 0, 1, n) = g.transpose();
    }
    Eigen::ColPivHouseholderQR<Mat> qr(J);
    if (qr.rank() < n + k) {
      // Regularize the singular direction instead of giving up.
      J.bottomRightCorner(k, k) -= 1e-12 * Mat::Identity(k, k);
      qr.compute(J);
    }
    const Vec step = qr.solve(-F);
    if (!step.allFinite()) break;
    double alpha = 1.0;
    bool accepted = false;
    Vec F_new;
    for (int ls = 0; ls < 40; ++ls, alpha *= 0.5) {
      const Vec y_new = y + alpha * step.head(n);
      const Vec l_new = lambda + alpha * step.tail(k);
      residual(y_new, l_new, F_new);
      const double m_new = F_new.squaredNorm();
      if (std::isfinite(m_new) && m_new < (1.0 - 1e-4 * alpha) * merit) {
        y = y_new;
        lambda = l_new;
        F = F_new;
        merit = m_new;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.converged = converged_at(F, y);
      break;
    }
    if (y.norm() > 1e12) break;
  }
  if (!out.converged && std::isfinite(merit)) out.converged = converged_at(F, y);
  out.y = std::move(y);
  out.lambda = std::move(lambda);
  return out;
}

/// Pushes y inward along the gradient until the sublevel inequality holds
/// exactly on computed values.
Vec settle_inside(const SublevelSlice& s, Vec y) {
  for (int k = 0; k < 12; ++k) {
    const auto vg = s.value_gradient(y);
    const double excess = vg.value - s.level;
    if (excess <= 0.0) break;
    const double gg = vg.gradient.squaredNorm();
    if (gg == 0.0) break;
    const double push = std::max(excess, 1e-16 * std::max(1.0, std::abs(s.level))) *
                        std::ldexp(1.0, k);
    y -= (push / gg) * vg.gradient;
  }
  return y;
}

ProjectionResult project_sublevel(const SublevelSlice& s, const Vec& x,
                                  const ProjectionOptions& opt) {
  const auto vx = s.value_gradient(x);
  if (vx.value <= s.level) return inside(x);

  const Atom atom{s};
  const std::vector<const Atom*> active{&atom};
  const double gx = vx.gradient.norm();
  const double d_est = gx > 0.0 ? (vx.value - s.level) / gx : 1.0;
  Rng rng(StreamKey(opt.seed).split("project_sublevel").split(x));

  BestCandidate best;
  BestCandidate fallback;  // feasible but unconverged
  int iterations = 0;
  auto run = [&](const Vec& y0) {
    const double g0 = s.value_gradient(y0).gradient.norm();
    const double dist0 = std::max((x - y0).norm(), d_est);
    Vec l0(1);
    l0[0] = g0 > 0.0 ? dist0 / g0 : 1.0;
    NewtonOutcome r = kkt_newton(active, x, y0, l0, opt);
    iterations += r.iterations;
    if (!r.y.allFinite()) return;
    Vec y = settle_inside(s, r.y);
    if (r.converged && r.lambda[0] >= 0.0 && s.value(y) <= s.level) {
      best.offer(x, y);
    } else if (s.value(y) <= s.level) {
      fallback.offer(x, y);
    }
  };

  const int starts = std::max(1, opt.starts);
  run(x);
  if (gx > 0.0 && starts > 1) run(x - d_est * vx.gradient / gx);
  for (int i = 2; i < starts; ++i) {
    Vec y0 = x;
    for (Eigen::Index j = 0; j < x.size(); ++j) y0[j] += d_est * rng.normal();
    run(y0);
  }
  if (!best.point) {
    // Restart from genuine boundary points near x.
    const Region near = Region::ball(x, std::max(4.0 * d_est, 1.0));
    Slice slice(static_cast<int>(x.size()), s);
    const auto samples =
        sample_boundary(slice, near, starts,
                        StreamKey(opt.seed).split("sublevel_restart").split(x).value());
    for (const auto& p : samples.points) {
      fallback.offer(x, p);
      run(p);
    }
  }
  if (best.point) return make_result(x, *best.point, true, iterations);
  if (fallback.point) return make_result(x, *fallback.point, false, iterations);
  throw EmptySetError("sublevel slice: no feasible point found near the query");
}

// --- intersection -----------------------------------------------------------

double stationarity_residual(const std::vector<const Atom*>& active,
                             const Vec& x, const Vec& y) {
  const Vec r0 = x - y;
  if (active.empty()) return r0.norm();
  Mat G(y.size(), static_cast<Eigen::Index>(active.size()));
  for (std::size_t i = 0; i < active.size(); ++i) G.col(i) = active[i]->gradient(y);
  Vec lambda = G.colPivHouseholderQr().solve(r0);
  lambda = lambda.cwiseMax(0.0);
  return (r0 - G * lambda).norm();
}

ProjectionResult project_intersection(const IntersectionSlice& s,
                                      const Slice& whole, const Vec& x,
                                      const ProjectionOptions& opt) {
  if (whole.contains(x)) return inside(x);
  const std::size_t m = s.members.size();
  const double scale = std::max(1.0, x.norm());

  // Dykstra's alternating projections.
  Vec y = x;
  std::vector<Vec> increments(m, Vec::Zero(x.size()));
  int sweeps = 0;
  bool member_unconverged = false;
  for (; sweeps < opt.max_alternating_sweeps; ++sweeps) {
    const Vec before = y;
    for (std::size_t i = 0; i < m; ++i) {
      const Vec z = y + increments[i];
      ProjectionResult r = project(s.members[i], z, opt);
      member_unconverged = member_unconverged || !r.converged;
      increments[i] = z - r.point;
      y = r.point;
    }
    if ((y - before).norm() <= 1e-15 * scale) break;
  }

  std::vector<Atom> atoms;
  flatten(whole, atoms);
  std::vector<const Atom*> active;
  for (const auto& a : atoms) {
    if (a.violation(y) >= -1e-7 * scale) active.push_back(&a);
  }
  auto feasible = [&](const Vec& p) {
    return std::all_of(atoms.begin(), atoms.end(), [&](const Atom& a) {
      return a.violation(p) <= opt.boundary_tol;
    });
  };

  // Polish on the active set.
  if (!active.empty() && active.size() <= static_cast<std::size_t>(x.size())) {
    Mat G(x.size(), static_cast<Eigen::Index>(active.size()));
    for (std::size_t i = 0; i < active.size(); ++i) G.col(i) = active[i]->gradient(y);
    Vec l0 = G.colPivHouseholderQr().solve(Vec(x - y)).cwiseMax(0.0);
    NewtonOutcome polished = kkt_newton(active, x, y, l0, opt);
    if (polished.converged && polished.y.allFinite() &&
        (polished.lambda.array() >= -opt.kkt_tol).all() && feasible(polished.y) &&
        (polished.y - y).norm() <= 1e-4 * scale) {
      return make_result(x, polished.y, !member_unconverged,
                         sweeps + polished.iterations);
    }
  }
  const bool ok = feasible(y) &&
                  stationarity_residual(active, x, y) < opt.kkt_tol * scale &&
                  !member_unconverged;
  return make_result(x, y, ok, sweeps);
}

}  // namespace

ProjectionResult project(const Slice& slice, const Vec& x,
                         const ProjectionOptions& options) {
  require_dimension(slice.dimension(), x.size(), "project");
  require(x.allFinite(), "project: query point is not finite");
  if (slice.trivially_empty()) throw EmptySetError("slice is empty");
  return std::visit(
      overloaded{
          [&](const BallSlice& b) { return project_ball(b, x); },
          [&](const HalfspaceSlice& h) { return project_halfspace(h, x); },
          [&](const PolytopeSlice& p) { return project_polytope(p, x); },
          [&](const SublevelSlice& s) { return project_sublevel(s, x, options); },
          [&](const IntersectionSlice& s) {
            return project_intersection(s, slice, x, options);
          },
      },
      slice.variant());
}

ProjectionResult project(const SetFamily& family, double t, const Vec& x,
                         const ProjectionOptions& options) {
  ProjectionOptions local = options;
  local.seed = StreamKey(options.seed).split("project").split(t).value();
  return project(family.at(t), x, local);
}

Vec proximal_normal(const Slice& slice, const Vec& x, double tol) {
  require_dimension(slice.dimension(), x.size(), "proximal_normal");
  require(slice.violation(x) <= tol,
          "proximal_normal: point is not in the set (within boundary_tol)");
  const Vec zero = Vec::Zero(x.size());
  return std::visit(
      overloaded{
          [&](const BallSlice& b) -> Vec {
            const Vec d = x - b.center;
            const double n = d.norm();
            if (n < b.radius - tol) return zero;
            if (b.radius <= 0.0 || n == 0.0) {
              throw SingularNormalError("degenerate ball: every direction is normal");
            }
            return d / n;
          },
          [&](const HalfspaceSlice& h) -> Vec {
            const double nn = h.normal.norm();
            if (nn == 0.0 || (h.normal.dot(x) - h.offset) / nn < -tol) return zero;
            return h.normal / nn;
          },
          [&](const PolytopeSlice& p) -> Vec {
            Vec sum = zero;
            for (const auto& f : p.faces) {
              const double nn = f.normal.norm();
              if (nn > 0.0 && (f.normal.dot(x) - f.offset) / nn >= -tol) {
                sum += f.normal / nn;
              }
            }
            const double n = sum.norm();
            return n > 0.0 ? Vec(sum / n) : zero;
          },
          [&](const SublevelSlice& s) -> Vec {
            const auto vg = s.value_gradient(x);
            const double gn = vg.gradient.norm();
            const double g = vg.value - s.level;
            if (g < 0.0 && (gn == 0.0 || g / gn < -tol)) return zero;
            if (gn == 0.0) {
              throw SingularNormalError(
                  "gradient vanishes at a boundary point (critical point)");
            }
            return vg.gradient / gn;
          },
          [&](const IntersectionSlice& s) -> Vec {
            Vec sum = zero;
            for (const auto& m : s.members) sum += proximal_normal(m, x, tol);
            const double n = sum.norm();
            return n > 0.0 ? Vec(sum / n) : zero;
          },
      },
      slice.variant());
}

Vec proximal_normal(const SetFamily& family, double t, const Vec& x,
                    double tol) {
  return proximal_normal(family.at(t), x, tol);
}

}  // namespace sweep
