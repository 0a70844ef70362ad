#include <benchmark/benchmark.h>

#include "wsm/chambers.hpp"
#include "wsm/graph.hpp"
#include "wsm/strata.hpp"

using namespace wsm;

namespace {

// Wheel: a hub joined to a ring of genus-0 vertices, each carrying one tail.
WGraph wheel(std::size_t spokes) {
  WGraph g(TargetProfile::point());
  const auto hub = g.add_vertex(0);
  std::vector<std::size_t> rim;
  for (std::size_t i = 0; i < spokes; ++i) {
    rim.push_back(g.add_vertex(0));
    g.add_edge(hub, rim.back());
    g.add_tail(rim.back());
  }
  for (std::size_t i = 0; i < spokes; ++i) g.add_edge(rim[i], rim[(i + 1) % spokes]);
  return g;
}

// A chain of unstable genus-0 vertices ending in a stable one.
WGraph unstable_chain(std::size_t length) {
  WGraph g(TargetProfile::point());
  auto prev = g.add_vertex(1);
  for (std::size_t i = 0; i < length; ++i) {
    const auto v = g.add_vertex(0);
    g.add_edge(prev, v);
    prev = v;
  }
  g.add_tail(prev, Rational(1) / Rational(3));
  return g;
}

void BM_EnumerateChambers(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_chambers(n, WallKind::fine));
}
BENCHMARK(BM_EnumerateChambers)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_CanonicalForm(benchmark::State& state) {
  const WGraph g = wheel(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(g));
}
BENCHMARK(BM_CanonicalForm)->DenseRange(3, 7);

void BM_Stabilize(benchmark::State& state) {
  const WGraph g = unstable_chain(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stabilize(g));
}
BENCHMARK(BM_Stabilize)->RangeMultiplier(2)->Range(2, 32);

void BM_EnumerateStrata(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const StrataQuery q{0, WeightData::from_weights(std::vector<Rational>(n, Rational(1))), CurveClass(0),
                      TargetProfile::point(), 2};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_strata(q));
}
BENCHMARK(BM_EnumerateStrata)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
