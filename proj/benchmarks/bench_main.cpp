#include <sweep/sweep.hpp>

#include <benchmark/benchmark.h>

using namespace sweep;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Polynomial square_norm() { return Polynomial(2, {{1.0, {2, 0}}, {1.0, {0, 2}}}); }

SetFamily square() {
  std::vector<MovingHalfspace> faces{
      {TimeCurve::constant(vec2(-1, 0)), TimeFunction::affine(0, -1)},
      {TimeCurve::constant(vec2(1, 0)), TimeFunction::affine(1, 1)},
      {TimeCurve::constant(vec2(0, -1)), TimeFunction::constant(1)},
      {TimeCurve::constant(vec2(0, 1)), TimeFunction::constant(1)}};
  return SetFamily(MovingPolytope{faces});
}

void BM_ProjectBall(benchmark::State& state) {
  const SetFamily ball = SetFamily::static_ball(vec2(0, 0), 1.0);
  const Vec x = vec2(2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(project(ball, 0.0, x));
}
BENCHMARK(BM_ProjectBall);

void BM_ProjectPolytope(benchmark::State& state) {
  const SetFamily fam = square();
  const Vec x = vec2(3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(project(fam, 0.5, x));
}
BENCHMARK(BM_ProjectPolytope);

void BM_ProjectCone(benchmark::State& state) {
  const SetFamily cone =
      SetFamily::sublevel(Polynomial(2, {{1.0, {2, 0}}, {-1.0, {0, 2}}}), TimeFunction::constant(0));
  const Vec x = vec2(1, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(project(cone, 0.0, x));
}
BENCHMARK(BM_ProjectCone);

void BM_CatchUpShrinkingDisc(benchmark::State& state) {
  const SetFamily fam = SetFamily::sublevel(square_norm(), TimeFunction::affine(1.0, -1.0));
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(catch_up(fam, vec2(1, 0), 0.0, 0.99, h));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CatchUpShrinkingDisc)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_TalwegGrowingDisc(benchmark::State& state) {
  const SetFamily fam = SetFamily::sublevel(square_norm(), TimeFunction::affine(0.0, 1.0));
  const Region ball = Region::ball(vec2(0, 0), 1.0);
  const auto grid = geometric_grid(0.01, 1.0, static_cast<std::size_t>(state.range(0)));
  TalwegOptions opts;
  opts.samples = 16;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(talweg_profile(fam, ball, grid, opts));
}
BENCHMARK(BM_TalwegGrowingDisc)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
