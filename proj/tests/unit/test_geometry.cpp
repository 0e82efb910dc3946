#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace sweep;
using sweep::testing::vec;

TEST_CASE("poly_eval_grad examples") {
  SUBCASE("x^2 + y^2 at (1,2)") {
    const auto vg = testing::square_norm_2d().value_gradient(vec({1, 2}));
    CHECK(vg.value == 5.0);
    CHECK(vg.gradient[0] == 2.0);
    CHECK(vg.gradient[1] == 4.0);
  }
  SUBCASE("zero polynomial") {
    const Polynomial zero(3);
    const auto vg = zero.value_gradient(vec({0.3, -7, 2}));
    CHECK(vg.value == 0.0);
    CHECK(vg.gradient.isZero(0.0));
    CHECK(zero.hessian(vec({1, 2, 3})).isZero(0.0));
  }
  SUBCASE("x^2 - y^2 at (3,1)") {
    const auto vg = testing::cone_2d().value_gradient(vec({3, 1}));
    CHECK(vg.value == 8.0);
    CHECK(vg.gradient[0] == 6.0);
    CHECK(vg.gradient[1] == -2.0);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(testing::cone_2d().value(vec({1, 2, 3})), InputError);
  }
}

TEST_CASE("polynomial gradient and Hessian agree with central differences") {
  const Polynomial p(3, {{1.5, {3, 1, 0}},
                         {-2.0, {0, 2, 2}},
                         {0.7, {1, 1, 1}},
                         {4.0, {0, 0, 0}},
                         {-1.0, {0, 0, 5}}});
  Rng rng(StreamKey(17));
  for (int trial = 0; trial < 25; ++trial) {
    Vec x(3);
    for (int i = 0; i < 3; ++i) x[i] = rng.uniform(-1.5, 1.5);
    const Vec g = p.gradient(x);
    const Mat H = p.hessian(x);
    double previous_error = std::numeric_limits<double>::infinity();
    for (double step : {1e-2, 1e-3, 1e-4}) {
      Vec fd(3);
      Mat fdH(3, 3);
      for (int i = 0; i < 3; ++i) {
        Vec e = Vec::Zero(3);
        e[i] = step;
        fd[i] = (p.value(x + e) - p.value(x - e)) / (2 * step);
        fdH.col(i) = (p.gradient(x + e) - p.gradient(x - e)) / (2 * step);
      }
      const double err = (fd - g).norm() / std::max(1.0, g.norm());
      CHECK(err <= previous_error + 1e-12);
      previous_error = err;
      CHECK((fdH - H).norm() <= 1e-2 * std::max(1.0, H.norm()));
    }
    CHECK(previous_error < 1e-6);
  }
}

TEST_CASE("shifted polynomial evaluates p(x - s)") {
  const Polynomial p(2, {{1.0, {3, 0}}, {-2.0, {1, 2}}, {0.5, {0, 0}}});
  const Vec s = vec({0.4, -1.3});
  const Polynomial q = p.shifted(s);
  Rng rng(StreamKey(3));
  for (int i = 0; i < 20; ++i) {
    const Vec x = vec({rng.uniform(-2, 2), rng.uniform(-2, 2)});
    CHECK(q.value(x) == doctest::Approx(p.value(x - s)).epsilon(1e-12));
  }
}

TEST_CASE("time functions are piecewise polynomials in absolute t") {
  const TimeFunction f({1.0}, {{0.0, 1.0}, {2.0, -1.0}});  // t, then 2 - t
  CHECK(f(0.5) == 0.5);
  CHECK(f(1.0) == 1.0);
  CHECK(f(1.5) == 0.5);
  CHECK(f.derivative(1.5) == -1.0);
  CHECK_FALSE(f.is_constant());
  CHECK(TimeFunction::constant(3.0).is_constant());
  CHECK_THROWS_AS(TimeFunction({1.0, 0.5}, {{0}, {1}, {2}}), InputError);
}

TEST_CASE("membership examples") {
  const SetFamily ball = SetFamily::ball(TimeCurve::constant(vec({0, 0})),
                                         TimeFunction::affine(1.0, -1.0));
  CHECK(membership(ball, 0.0, vec({1, 0})));
  CHECK_FALSE(membership(ball, 0.5, vec({1, 0})));

  const SetFamily cone = SetFamily::sublevel(testing::cone_2d(), TimeFunction::constant(0.0));
  CHECK(membership(cone, 0.0, vec({1, 2})));
  CHECK_FALSE(membership(cone, 0.0, vec({2, 1})));

  CHECK_THROWS_AS(membership(ball, 0.0, vec({1, 0, 0})), InputError);
}

TEST_CASE("negative radius is an empty slice, not a clamp") {
  const SetFamily ball = SetFamily::ball(TimeCurve::constant(vec({0, 0})),
                                         TimeFunction::affine(1.0, -1.0));
  CHECK(membership(ball, 1.0, vec({0, 0})));  // radius 0: a single point
  CHECK_FALSE(membership(ball, 1.5, vec({0, 0})));
  CHECK(ball.at(1.5).trivially_empty());
  const auto s = sample_boundary(ball, 1.5, Region::box(vec({-1, -1}), vec({1, 1})), 4, 1);
  CHECK(s.points.empty());
  CHECK(s.possibly_empty);
}

TEST_CASE("sublevel membership is exactly p(x) <= r(t)") {
  const Polynomial p(2, {{1.0, {4, 0}}, {-3.0, {1, 1}}, {0.5, {0, 2}}});
  const SetFamily fam = SetFamily::sublevel(p, TimeFunction::polynomial({0.2, -0.5, 1.0}));
  Rng rng(StreamKey(99));
  for (int i = 0; i < 200; ++i) {
    const double t = rng.uniform(-1, 2);
    const Vec x = vec({rng.uniform(-2, 2), rng.uniform(-2, 2)});
    CHECK(membership(fam, t, x) == (p.value(x) <= 0.2 - 0.5 * t + t * t));
  }
}

TEST_CASE("intersection membership implies membership of every member") {
  const SetFamily a = SetFamily::static_ball(vec({0, 0}), 1.0);
  const SetFamily b = testing::translating_halfspace();
  const SetFamily c = SetFamily::sublevel(testing::cone_2d(), TimeFunction::affine(0.1, 0.0));
  const SetFamily both(Intersection{{a, SetFamily(Intersection{{b, c}})}});
  Rng rng(StreamKey(5));
  int inside = 0;
  for (int i = 0; i < 500; ++i) {
    const double t = rng.uniform(-0.5, 0.5);
    const Vec x = vec({rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)});
    if (membership(both, t, x)) {
      ++inside;
      CHECK(membership(a, t, x));
      CHECK(membership(b, t, x));
      CHECK(membership(c, t, x));
    } else {
      CHECK_FALSE((membership(a, t, x) && membership(b, t, x) && membership(c, t, x)));
    }
  }
  CHECK(inside > 20);
}

TEST_CASE("translate shifts every slice") {
  const SetFamily base = SetFamily::static_ball(vec({0, 0}), 0.5);
  const TimeCurve shift({TimeFunction::affine(0, 1), TimeFunction::constant(2)});
  const SetFamily moved = SetFamily::translate(base, shift);
  CHECK(membership(moved, 1.0, vec({1.0, 2.4})));
  CHECK_FALSE(membership(moved, 1.0, vec({0.0, 0.0})));
  const SetFamily sub = SetFamily::translate(testing::growing_disc(), shift);
  CHECK(membership(sub, 0.25, vec({0.25 + 0.49, 2.0})));
  CHECK_FALSE(membership(sub, 0.25, vec({0.25 + 0.51, 2.0})));
}

TEST_CASE("sample_boundary: unit ball boundary") {
  const SetFamily ball = SetFamily::static_ball(vec({0, 0}), 1.0);
  const Region box = Region::box(vec({-2, -2}), vec({2, 2}));
  const auto s = sample_boundary(ball, 0.0, box, 8, 42);
  REQUIRE(s.points.size() == 8);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const double r = s.points[i].norm();
    CHECK(r <= 1.0);
    CHECK(r >= 1.0 - kBoundaryTol);
    CHECK(membership(ball, 0.0, s.points[i]));
    CHECK_FALSE(membership(ball, 0.0, s.points[i] + kBoundaryTol * s.directions[i]));
  }
}

TEST_CASE("sample_boundary: half-space face") {
  const SetFamily half = SetFamily::lower_bound(2, 0, TimeFunction::constant(0.3));
  const auto s = sample_boundary(half, 0.0, Region::box(vec({-2, -2}), vec({2, 2})), 4, 7);
  REQUIRE(s.points.size() == 4);
  for (const Vec& x : s.points) {
    CHECK(x[0] >= 0.3);
    CHECK(x[0] <= 0.3 + kBoundaryTol);
  }
}

TEST_CASE("sample_boundary: cone x^2 <= y^2 against its analytic description") {
  const SetFamily cone = SetFamily::sublevel(testing::cone_2d(), TimeFunction::constant(0.0));
  const auto s = sample_boundary(cone, 0.0, Region::box(vec({-2, -2}), vec({2, 2})), 16, 11);
  REQUIRE(s.points.size() == 16);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const Vec& x = s.points[i];
    CHECK(std::abs(x[0]) <= std::abs(x[1]));
    // The ray left the cone within boundary_tol, so the point is within
    // boundary_tol of one of the lines |x| = |y|.
    CHECK(std::abs(std::abs(x[0]) - std::abs(x[1])) <= 2.0 * kBoundaryTol);
  }
}

TEST_CASE("sample_boundary is deterministic for a fixed seed") {
  const SetFamily disc = testing::growing_disc();
  const Region box = Region::box(vec({-1, -1}), vec({1, 1}));
  const auto a = sample_boundary(disc, 0.3, box, 10, 1234);
  const auto b = sample_boundary(disc, 0.3, box, 10, 1234);
  const auto c = sample_boundary(disc, 0.3, box, 10, 1235);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
  CHECK(a.points.front() != c.points.front());
}

TEST_CASE("sample_boundary output passes membership and sits on the boundary") {
  const std::vector<SetFamily> families{
      testing::shrinking_disc(), testing::translating_halfspace(),
      SetFamily::sublevel(testing::cone_2d(), TimeFunction::constant(0.2)),
      SetFamily(Intersection{{SetFamily::static_ball(vec({0, 0}), 1.2),
                              testing::translating_halfspace()}})};
  const Region region = Region::ball(vec({0.1, 0.0}), 1.5);
  std::uint64_t seed = 0;
  for (const auto& fam : families) {
    for (double t : {0.0, 0.3}) {
      const auto s = sample_boundary(fam, t, region, 12, ++seed);
      CHECK(s.points.size() == 12);
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        CHECK(membership(fam, t, s.points[i]));
        CHECK(region.contains(s.points[i]));
        CHECK_FALSE(membership(fam, t, s.points[i] + kBoundaryTol * s.directions[i]));
      }
    }
  }
}

TEST_CASE("regions") {
  CHECK_THROWS_AS(Region::box(vec({0, 0}), vec({0, 1})), InputError);
  CHECK_THROWS_AS(Region::ball(vec({0, 0}), 0.0), InputError);
  const Region ball = Region::ball(vec({1, 1}), 0.5);
  Rng rng(StreamKey(1));
  for (int i = 0; i < 100; ++i) CHECK(ball.contains(ball.sample(rng)));
  CHECK(ball.diameter() == 1.0);
}
