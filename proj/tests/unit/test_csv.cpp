#include "helpers.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>

using namespace sweep;
using sweep::testing::vec;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  Rng rng(StreamKey(77));
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.normal() * std::pow(10.0, rng.uniform(-30, 30));
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("trajectory csv layout") {
  const auto traj = catch_up(testing::translating_halfspace(), vec({0, 0}), 0.0, 0.2, 0.1);
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  const auto rows = lines(os.str());
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "t,x_1,x_2,step_speed,cum_length,is_breakpoint");
  CHECK(rows[1] == "0,0,0,0,0,0");
  CHECK(rows[2] == "0.1,0.1,0,1,0.1,0");
}

TEST_CASE("talweg, desing, bridge and length-study layouts") {
  const auto r = geometric_grid(0.25, 1.0, 3);
  const auto p = talweg_profile(testing::growing_disc(), Region::ball(vec({0, 0}), 1.0), r,
                                {.samples = 4});
  std::ostringstream t;
  write_talweg_csv(t, p, 2);
  CHECK(lines(t.str()).front() == "r,phi,witness_1,witness_2");
  CHECK(lines(t.str()).size() == 4);

  std::ostringstream d;
  write_desing_csv(d, desingularize(p, 0.0));
  const auto drows = lines(d.str());
  CHECK(drows[0] == "r,Phi");
  CHECK(drows[1] == "0,0");
  CHECK(drows.size() == 5);

  std::ostringstream b;
  write_bridge_csv(b, run_bridge(Polynomial(2, {{0.5, {2, 0}}, {0.5, {0, 2}}}), vec({1, 0}),
                                 0.1, 0.05));
  const auto brows = lines(b.str());
  CHECK(brows[0] == "s,u_1,u_2,inclusion_residual,value_residual");
  CHECK(brows.size() == 4);

  std::ostringstream l;
  write_length_study_csv(l, length_study(testing::translating_halfspace(), vec({0, 0}), 0.0,
                                         1.0, {0.1, 0.05, 0.025}));
  const auto lrows = lines(l.str());
  CHECK(lrows[0] == "h,length,gap_to_next,breakpoints,status");
  CHECK(lrows[1].rfind("0.1,1,", 0) == 0);
  CHECK(lrows[3].find(",,0,completed") != std::string::npos);
}

TEST_CASE("csv output is byte-identical across runs") {
  auto render = [] {
    std::ostringstream os;
    const auto p = talweg_profile(testing::growing_disc(), Region::ball(vec({0, 0}), 1.0),
                                  geometric_grid(0.1, 1.0, 5), {.samples = 8, .seed = 9});
    write_talweg_csv(os, p, 2);
    write_trajectory_csv(os, catch_up(testing::shrinking_disc(), vec({1, 0}), 0, 0.5, 0.05));
    return os.str();
  };
  CHECK(render() == render());
}
