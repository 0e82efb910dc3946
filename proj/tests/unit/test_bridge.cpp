#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace sweep;
using sweep::testing::vec;

namespace {

/// 0.5 (x^2 + y^2).
Polynomial half_square() { return Polynomial(2, {{0.5, {2, 0}}, {0.5, {0, 2}}}); }

/// 0.5 x^2 + 2 y^2.
Polynomial ellipse() { return Polynomial(2, {{0.5, {2, 0}}, {2.0, {0, 2}}}); }

}  // namespace

TEST_CASE("gradient_flow examples") {
  SUBCASE("0.5 |x|^2 from (1,0): x(t) = e^{-t}") {
    const auto flow = gradient_flow(half_square(), vec({1, 0}), 2.0, 1e-2);
    for (std::size_t k = 0; k < flow.trajectory.points.size(); ++k) {
      const double t = flow.trajectory.times[k];
      CHECK(flow.trajectory.points[k][0] == doctest::Approx(std::exp(-t)).epsilon(1e-9));
      CHECK(flow.trajectory.points[k][1] == 0.0);
    }
    CHECK(flow.final_value == doctest::Approx(0.5 * std::exp(-4.0)).epsilon(1e-8));
  }
  SUBCASE("constant f is stationary") {
    const Polynomial c(2, {{3.0, {0, 0}}});
    const auto flow = gradient_flow(c, vec({0.2, 0.4}), 1.0, 0.1);
    CHECK(flow.trajectory.status == TrajectoryStatus::CriticalPoint);
    CHECK(flow.trajectory.points.size() == 1);
    CHECK(flow.final_value == 3.0);
  }
  SUBCASE("decoupled rates: (e^{-t}, e^{-4t}) to fourth order") {
    double previous = 0.0;
    for (double h : {0.04, 0.02}) {
      const auto flow = gradient_flow(ellipse(), vec({1, 1}), 1.0, h);
      const Vec exact = vec({std::exp(-1.0), std::exp(-4.0)});
      const double err = (flow.trajectory.points.back() - exact).norm();
      CHECK(err <= 0.5 * std::pow(h, 4));
      if (previous > 0.0) CHECK(previous / err == doctest::Approx(16.0).epsilon(0.15));
      previous = err;
    }
  }
  SUBCASE("divergence") {
    const Polynomial f(1, {{-1.0, {4}}});  // -x^4, flow x' = 4x^3 blows up
    const auto flow = gradient_flow(f, vec({1}), 1.0, 1e-3);
    CHECK(flow.trajectory.status == TrajectoryStatus::Diverged);
  }
}

TEST_CASE("reparametrize_by_value") {
  SUBCASE("|u(s)| = sqrt(1 - 2s)") {
    const auto flow = gradient_flow(half_square(), vec({1, 0}), 3.0, 1e-3);
    const auto swept = reparametrize_by_value(flow.trajectory, half_square());
    CHECK(swept.b == 0.5);
    const auto& s = swept.trajectory.times;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k > 0) CHECK(s[k] > s[k - 1]);
      CHECK(swept.trajectory.points[k].norm() ==
            doctest::Approx(std::sqrt(1.0 - 2.0 * s[k])).epsilon(1e-12));
    }
  }
  SUBCASE("single node") {
    Trajectory one;
    one.start(0.0, vec({1, 0}));
    const auto swept = reparametrize_by_value(one, half_square());
    CHECK(swept.trajectory.points.size() == 1);
    CHECK(swept.velocity.empty());
  }
  SUBCASE("1-D: du/ds = -1 / f'(u)") {
    const Polynomial f(1, {{0.5, {2}}});
    const auto flow = gradient_flow(f, vec({1}), 2.0, 1e-3);
    const auto swept = reparametrize_by_value(flow.trajectory, f);
    for (std::size_t k = 1; k + 1 < swept.velocity.size(); ++k) {
      const double u = swept.trajectory.points[k][0];
      CHECK(swept.velocity[k][0] == doctest::Approx(-1.0 / u).epsilon(1e-4));
    }
  }
  SUBCASE("f increasing along the curve is rejected") {
    Trajectory up;
    up.start(0.0, vec({0.5, 0}));
    up.append(0.1, vec({1.0, 0}));
    CHECK_THROWS_AS(reparametrize_by_value(up, half_square()), NonMonotoneFlowError);
  }
  SUBCASE("ties collapse") {
    Trajectory tie;
    tie.start(0.0, vec({1, 0}));
    tie.append(0.1, vec({0, 1}));
    tie.append(0.2, vec({0.5, 0}));
    const auto swept = reparametrize_by_value(tie, half_square());
    CHECK(swept.trajectory.points.size() == 2);
    CHECK(swept.source_index == std::vector<std::size_t>{0, 2});
  }
}

TEST_CASE("verify_sublevel_inclusion") {
  SUBCASE("0.5 |x|^2: angles tiny, values exact") {
    auto r = run_bridge(half_square(), vec({1, 0}), 3.0, 1e-3);
    const auto check = verify_sublevel_inclusion(r, half_square());
    CHECK(check.max_angle <= 1e-2);
    CHECK(check.max_value_residual <= 1e-6);
  }
  SUBCASE("1-D angles vanish") {
    const Polynomial f(1, {{0.5, {2}}});
    auto r = run_bridge(f, vec({1}), 2.0, 1e-2);
    const auto check = verify_sublevel_inclusion(r, f);
    CHECK(check.max_angle == 0.0);
  }
  SUBCASE("ellipse: angles shrink like h^2") {
    auto coarse = run_bridge(ellipse(), vec({1, 1}), 2.0, 2e-2);
    auto fine = run_bridge(ellipse(), vec({1, 1}), 2.0, 1e-2);
    const double a = verify_sublevel_inclusion(coarse, ellipse()).max_angle;
    const double b = verify_sublevel_inclusion(fine, ellipse()).max_angle;
    CHECK(a <= 1e-2);
    CHECK(a / b == doctest::Approx(4.0).epsilon(0.2));
  }
}

TEST_CASE("bridge lengths and the sweeping speed bound") {
  auto r = run_bridge(ellipse(), vec({1, 1}), 1.5, 1e-3);
  const double flow = r.flow.trajectory.length();
  const double swept = r.swept.trajectory.length();
  CHECK(std::abs(flow - swept) <= 1e-6 * flow);
  const auto rep = verify_speed_bound(r.swept.trajectory, swept_family(ellipse(), r.swept.b),
                                      LipOptions{.samples = 8});
  CHECK(rep.max_ratio <= 1.05);
  CHECK(rep.violations.empty());
}

TEST_CASE("level_talweg examples") {
  SUBCASE("|x|^2 on the unit ball: 1/(2 sqrt r)") {
    const auto r = geometric_grid(0.01, 1.0, 10);
    const auto p = level_talweg(testing::square_norm_2d(), Region::ball(vec({0, 0}), 1.0), r);
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(p.phi[i] == doctest::Approx(0.5 / std::sqrt(r[i])).epsilon(0.05));
    }
  }
  SUBCASE("linear f: phi = 1") {
    const Polynomial f(2, {{1.0, {1, 0}}});
    const auto p = level_talweg(f, Region::box(vec({-1, -1}), vec({1, 1})), {-0.5, 0.0, 0.5});
    for (double v : p.phi) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("ellipse level 0.5 against a parameter scan") {
    // 0.5 x^2 + 2 y^2 = 0.5  <=>  (x, y) = (cos θ, sin(θ) / 2).
    double scan = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100000; ++i) {
      const double th = 2.0 * std::numbers::pi * i / 100000.0;
      scan = std::min(scan, std::hypot(std::cos(th), 2.0 * std::sin(th)));
    }
    const auto p = level_talweg(ellipse(), Region::ball(vec({0, 0}), 2.0), {0.5});
    CHECK(p.phi[0] == doctest::Approx(1.0 / scan).epsilon(1e-6));
    REQUIRE(p.witness[0]);
    CHECK(ellipse().value(*p.witness[0]) == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("empty level sets are flagged") {
    const auto p = level_talweg(testing::square_norm_2d(), Region::ball(vec({0, 0}), 1.0),
                                {0.5, 4.0});
    CHECK_FALSE(p.empty[0]);
    CHECK(p.empty[1]);
  }
}

TEST_CASE("level_talweg agrees with talweg_profile within 10%") {
  const auto f = ellipse();
  const Region region = Region::ball(vec({0, 0}), 1.5);
  const auto r = geometric_grid(0.05, 1.0, 6);
  const auto level = level_talweg(f, region, r);
  const auto sampled = talweg_profile(SetFamily::sublevel(f, TimeFunction::affine(0.0, 1.0)),
                                      region, r, {.samples = 64});
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(sampled.phi[i] == doctest::Approx(level.phi[i]).epsilon(0.10));
  }
}
