#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace sweep;
using sweep::testing::vec;

namespace {

struct GridMinimum {
  Vec point;
  double distance;
  double cell_diameter;
};

/// Brute force: the nearest grid node of [-2,2]^2 (n x n nodes) inside the set.
GridMinimum grid_projection(const std::function<bool(double, double)>& inside,
                            const Vec& x, int n = 2001) {
  const double h = 4.0 / (n - 1);
  GridMinimum best{vec({0, 0}), std::numeric_limits<double>::infinity(),
                   h * std::sqrt(2.0)};
  for (int i = 0; i < n; ++i) {
    const double a = -2.0 + i * h;
    for (int j = 0; j < n; ++j) {
      const double b = -2.0 + j * h;
      if (!inside(a, b)) continue;
      const double d = std::hypot(a - x[0], b - x[1]);
      if (d < best.distance) best = {vec({a, b}), d, best.cell_diameter};
    }
  }
  return best;
}

}  // namespace

TEST_CASE("project: closed-form examples") {
  SUBCASE("ball") {
    const auto r = project(SetFamily::static_ball(vec({0, 0}), 1.0), 0.0, vec({2, 0}));
    CHECK(r.point.isApprox(vec({1, 0})));
    CHECK(r.distance == doctest::Approx(1.0));
    REQUIRE(r.normal);
    CHECK(r.normal->isApprox(vec({1, 0})));
  }
  SUBCASE("half-space x1 >= 0.5") {
    const auto fam = SetFamily::lower_bound(2, 0, TimeFunction::constant(0.5));
    const auto r = project(fam, 0.0, vec({0, 0}));
    CHECK(r.point.isApprox(vec({0.5, 0})));
    CHECK(r.distance == doctest::Approx(0.5));
    REQUIRE(r.normal);
    CHECK(r.normal->isApprox(vec({-1, 0})));
  }
  SUBCASE("sublevel disc: radial projection") {
    const auto fam = SetFamily::sublevel(testing::square_norm_2d(), TimeFunction::constant(1.0));
    const auto r = project(fam, 0.0, vec({3, 4}));
    CHECK(r.converged);
    CHECK(r.point[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(r.point[1] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(r.distance == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(membership(fam, 0.0, r.point));
  }
  SUBCASE("inside points are returned unchanged") {
    const auto r = project(SetFamily::static_ball(vec({0, 0}), 1.0), 0.0, vec({0.2, 0.1}));
    CHECK(r.distance == 0.0);
    CHECK_FALSE(r.normal);
  }
}

TEST_CASE("project: nonconvex cone matches the grid oracle") {
  const auto fam = SetFamily::sublevel(testing::cone_2d(), TimeFunction::constant(0.0));
  const Vec x = vec({1, 0});
  const auto oracle = grid_projection([](double a, double b) { return a * a - b * b <= 0; }, x);
  const auto r = project(fam, 0.0, x);
  CHECK(r.converged);
  CHECK(std::abs(r.distance - oracle.distance) <= oracle.cell_diameter);
  CHECK(r.distance == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
  // Tie between (0.5, ±0.5) resolves to the lexicographically smaller point.
  CHECK(r.point[0] == doctest::Approx(0.5));
  CHECK(r.point[1] == doctest::Approx(-0.5));
}

TEST_CASE("project: polytope by active-set enumeration") {
  // Unit square [0,1]^2 moving right at unit speed.
  std::vector<MovingHalfspace> faces{
      {TimeCurve::constant(vec({-1, 0})), TimeFunction::affine(0, -1)},  // x >= t
      {TimeCurve::constant(vec({1, 0})), TimeFunction::affine(1, 1)},    // x <= 1 + t
      {TimeCurve::constant(vec({0, -1})), TimeFunction::constant(0)},    // y >= 0
      {TimeCurve::constant(vec({0, 1})), TimeFunction::constant(1)}};    // y <= 1
  const SetFamily square(MovingPolytope{faces});
  SUBCASE("vertex region") {
    const auto r = project(square, 0.0, vec({2, 2}));
    CHECK(r.point.isApprox(vec({1, 1})));
    CHECK(r.distance == doctest::Approx(std::sqrt(2.0)));
  }
  SUBCASE("edge region after translation") {
    const auto r = project(square, 0.5, vec({0, 0.5}));
    CHECK(r.point.isApprox(vec({0.5, 0.5})));
  }
  SUBCASE("grid oracle") {
    Rng rng(StreamKey(8));
    for (int i = 0; i < 5; ++i) {
      const Vec x = vec({rng.uniform(-2, 2), rng.uniform(-2, 2)});
      const auto oracle = grid_projection(
          [](double a, double b) { return a >= 0 && a <= 1 && b >= 0 && b <= 1; }, x, 401);
      CHECK(std::abs(project(square, 0.0, x).distance - oracle.distance) <=
            oracle.cell_diameter);
    }
  }
  SUBCASE("empty polytope") {
    std::vector<MovingHalfspace> bad{
        {TimeCurve::constant(vec({-1, 0})), TimeFunction::constant(-1)},  // x >= 1
        {TimeCurve::constant(vec({1, 0})), TimeFunction::constant(0)}};   // x <= 0
    CHECK_THROWS_AS(project(SetFamily(MovingPolytope{bad}), 0.0, vec({0, 0})), EmptySetError);
  }
}

TEST_CASE("project: intersections") {
  const SetFamily lens(Intersection{{SetFamily::static_ball(vec({0, 0}), 1.0),
                                     SetFamily::static_ball(vec({1, 0}), 1.0)}});
  const Vec x = vec({0.5, 2.0});
  const auto r = project(lens, 0.0, x);
  CHECK(r.converged);
  CHECK(r.point[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(r.point[1] == doctest::Approx(std::sqrt(0.75)).epsilon(1e-8));
  const auto oracle = grid_projection(
      [](double a, double b) {
        return a * a + b * b <= 1 && (a - 1) * (a - 1) + b * b <= 1;
      },
      x, 801);
  CHECK(std::abs(r.distance - oracle.distance) <= oracle.cell_diameter);

  const SetFamily disc_and_half(Intersection{
      {SetFamily::sublevel(testing::square_norm_2d(), TimeFunction::constant(1.0)),
       SetFamily::lower_bound(2, 0, TimeFunction::constant(0.5))}});
  const auto q = project(disc_and_half, 0.0, vec({-1.0, 0.2}));
  CHECK(q.converged);
  CHECK(q.point[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(q.point[1] == doctest::Approx(0.2).epsilon(1e-8));
}

TEST_CASE("project: empty sets raise EmptySetError") {
  const SetFamily ball = SetFamily::ball(TimeCurve::constant(vec({0, 0})),
                                         TimeFunction::affine(1.0, -1.0));
  CHECK_THROWS_AS(project(ball, 2.0, vec({1, 1})), EmptySetError);
  const SetFamily never = SetFamily::sublevel(testing::square_norm_2d(), TimeFunction::constant(-1.0));
  CHECK_THROWS_AS(project(never, 0.0, vec({1, 1})), EmptySetError);
}

TEST_CASE("project: idempotence") {
  const std::vector<SetFamily> families{
      SetFamily::static_ball(vec({0.3, 0}), 1.0), testing::translating_halfspace(),
      SetFamily::sublevel(testing::cone_2d(), TimeFunction::constant(0.0)),
      testing::shrinking_disc()};
  Rng rng(StreamKey(21));
  for (const auto& fam : families) {
    for (int i = 0; i < 20; ++i) {
      const Vec x = vec({rng.uniform(-3, 3), rng.uniform(-3, 3)});
      const auto r = project(fam, 0.2, x);
      const auto again = project(fam, 0.2, r.point);
      CHECK(again.distance <= kBoundaryTol);
      CHECK(fam.at(0.2).violation(r.point) <= kBoundaryTol);
    }
  }
}

TEST_CASE("project: non-expansive on convex families") {
  std::vector<MovingHalfspace> faces{
      {TimeCurve::constant(vec({1, 1})), TimeFunction::constant(1)},
      {TimeCurve::constant(vec({-1, 0.5})), TimeFunction::constant(0.5)},
      {TimeCurve::constant(vec({0, -1})), TimeFunction::constant(1)}};
  const std::vector<SetFamily> families{
      SetFamily::static_ball(vec({0.3, 0}), 1.0), testing::translating_halfspace(),
      SetFamily(MovingPolytope{faces})};
  Rng rng(StreamKey(22));
  for (const auto& fam : families) {
    for (int i = 0; i < 50; ++i) {
      const Vec x = vec({rng.uniform(-3, 3), rng.uniform(-3, 3)});
      const Vec y = vec({rng.uniform(-3, 3), rng.uniform(-3, 3)});
      const Vec px = project(fam, 0.1, x).point;
      const Vec py = project(fam, 0.1, y).point;
      CHECK((px - py).norm() <= (x - y).norm() + 1e-12);
    }
  }
}

TEST_CASE("project: distance never exceeds distance to sampled boundary points") {
  const std::vector<SetFamily> families{
      SetFamily::sublevel(testing::cone_2d(), TimeFunction::constant(0.1)),
      testing::shrinking_disc(),
      SetFamily(Intersection{{SetFamily::static_ball(vec({0, 0}), 1.0),
                              testing::translating_halfspace()}})};
  const Region box = Region::box(vec({-2, -2}), vec({2, 2}));
  Rng rng(StreamKey(23));
  for (const auto& fam : families) {
    const auto samples = sample_boundary(fam, 0.1, box, 64, 3);
    for (int i = 0; i < 10; ++i) {
      const Vec x = vec({rng.uniform(-2, 2), rng.uniform(-2, 2)});
      const double d = project(fam, 0.1, x).distance;
      for (const Vec& y : samples.points) CHECK(d <= (x - y).norm() + 1e-9);
    }
  }
}

TEST_CASE("project: proximal normal ball test") {
  // Ball of radius distance/2 around point + ρ·normal meets S only at point.
  const std::vector<SetFamily> families{
      SetFamily::sublevel(testing::cone_2d(), TimeFunction::constant(0.0)),
      SetFamily::static_ball(vec({0, 0}), 1.0), testing::translating_halfspace()};
  Rng rng(StreamKey(24));
  for (const auto& fam : families) {
    const Slice slice = fam.at(0.3);
    for (int i = 0; i < 8; ++i) {
      const Vec x = vec({rng.uniform(-3, 3), rng.uniform(-3, 3)});
      const auto r = project(slice, x);
      if (!r.normal) continue;
      const double rho = r.distance / 2.0;
      const Vec center = r.point + rho * *r.normal;
      for (int k = 0; k < 400; ++k) {
        const Vec y = center + rho * 0.999 * std::sqrt(rng.uniform(0, 1)) * rng.direction(2);
        CHECK_FALSE(slice.contains(y));
      }
    }
  }
}

TEST_CASE("proximal_normal examples") {
  CHECK(proximal_normal(SetFamily::static_ball(vec({0, 0}), 1.0), 0.0, vec({0, 1}))
            .isApprox(vec({0, 1})));
  const auto disc = SetFamily::sublevel(testing::square_norm_2d(), TimeFunction::constant(1.0));
  CHECK(proximal_normal(disc, 0.0, vec({0.6, 0.8})).isApprox(vec({0.6, 0.8})));
  CHECK(proximal_normal(disc, 0.0, vec({0.1, 0.1})).isZero(0.0));
  const auto cone = SetFamily::sublevel(testing::cone_2d(), TimeFunction::constant(0.0));
  CHECK_THROWS_AS(proximal_normal(cone, 0.0, vec({0, 0})), SingularNormalError);
  CHECK(proximal_normal(testing::translating_halfspace(), 0.5, vec({0.5, 3}))
            .isApprox(vec({-1, 0})));
  CHECK_THROWS_AS(proximal_normal(disc, 0.0, vec({2, 0})), InputError);
}
