#include <benchmark/benchmark.h>

#include "coarse/augmented.hpp"
#include "coarse/group.hpp"
#include "coarse/homology.hpp"
#include "coarse/hyperbolicity.hpp"
#include "coarse/models.hpp"
#include "coarse/nerve.hpp"
#include "coarse/pipeline.hpp"
#include "coarse/towers.hpp"

namespace {

using coarse::HalfInt;

void BM_CayleyBallZ2(benchmark::State& state) {
  const auto spec = coarse::GroupSpec::free_abelian(2);
  for (auto _ : state) benchmark::DoNotOptimize(coarse::cayley_ball(spec, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CayleyBallZ2)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_GraphMetric(benchmark::State& state) {
  const auto ball = coarse::cayley_ball(coarse::GroupSpec::free_abelian(2), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ball.graph.metric());
  state.counters["points"] = static_cast<double>(ball.size());
}
BENCHMARK(BM_GraphMetric)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SphereCohomology(benchmark::State& state) {
  const auto s = coarse::subdivided_octahedron(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(coarse::cohomology(s, coarse::Coefficients::integers(), true, 2));
  state.counters["simplices"] = static_cast<double>(s.total_count());
}
BENCHMARK(BM_SphereCohomology)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_AntiCechNerve(benchmark::State& state) {
  const auto space = coarse::cayley_ball(coarse::GroupSpec::free_abelian(2), 24).graph.metric();
  const HalfInt c(static_cast<std::int64_t>(state.range(0)));
  for (auto _ : state) {
    const auto cover = coarse::anti_cech_cover(space, coarse::greedy_net(space, c), c, 1);
    benchmark::DoNotOptimize(coarse::nerve_complex(cover, 3));
  }
}
BENCHMARK(BM_AntiCechNerve)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_NerveTowerCycle(benchmark::State& state) {
  const auto space = coarse::cycle_graph(static_cast<std::size_t>(state.range(0))).metric();
  coarse::NerveTowerOptions o;
  o.levels = {{HalfInt(1), 1}, {HalfInt(2), 1}, {HalfInt(4), 1}, {HalfInt(8), 1}};
  o.core_radius = HalfInt(state.range(0) / 3);
  for (auto _ : state) benchmark::DoNotOptimize(coarse::nerve_cohomology_tower(space, o));
}
BENCHMARK(BM_NerveTowerCycle)->Arg(96)->Arg(192)->Unit(benchmark::kMillisecond);

void BM_FourPointHoroball(benchmark::State& state) {
  std::vector<coarse::Edge> edges;
  for (coarse::PointIndex i = 0; i + 1 < 33; ++i) edges.push_back({i, i + 1});
  const auto base = coarse::graph_metric(33, edges);
  const auto h = coarse::combinatorial_horoball(base, static_cast<int>(state.range(0)));
  const auto m = h.graph.metric();
  for (auto _ : state)
    benchmark::DoNotOptimize(coarse::four_point_delta(m, coarse::SamplingMode::sampled(1, 200000), 0));
  state.counters["points"] = static_cast<double>(m.size());
}
BENCHMARK(BM_FourPointHoroball)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TowerLimitsDoubling(benchmark::State& state) {
  const coarse::FgAbGroup z = coarse::FgAbGroup::free(1);
  coarse::IntMatrix two(1, 1);
  two(0, 0) = coarse::Integer(2);
  const auto m = static_cast<std::size_t>(state.range(0));
  const coarse::Tower t(std::vector<coarse::FgAbGroup>(m, z),
                        std::vector<coarse::Homomorphism>(m - 1, coarse::Homomorphism(z, z, two)));
  for (auto _ : state) benchmark::DoNotOptimize(coarse::limits(t));
}
BENCHMARK(BM_TowerLimitsDoubling)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
