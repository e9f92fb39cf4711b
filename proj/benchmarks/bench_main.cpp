#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "modext/extension.hpp"
#include "modext/seminorm.hpp"
#include "modext/series.hpp"

using namespace modext;

namespace {

FieldSample brownian_sample(std::size_t n) {
  SeriesSpec spec;
  spec.n_max = 1023;
  const auto path = draw_path(spec, 1);
  return partial_sum(path, spec.n_max, Grid::uniform(0, 1, n));
}

void BM_SeminormExhaustive(benchmark::State& state) {
  const auto f = brownian_sample(static_cast<std::size_t>(state.range(0)));
  const auto theta = Modulus::power(0.4, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(theta_seminorm(f, theta).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeminormExhaustive)->RangeMultiplier(2)->Range(128, 2048)->Complexity(benchmark::oNSquared);

void BM_SeminormBudgeted(benchmark::State& state) {
  const auto f = brownian_sample(16385);
  const auto theta = Modulus::power(0.4, 1.0);
  const auto budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theta_seminorm(f, theta, budget).value);
}
BENCHMARK(BM_SeminormBudgeted)->Arg(1 << 16)->Arg(1 << 20);

void BM_ExtensionEval(benchmark::State& state) {
  const auto anchors_n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  std::vector<double> vals;
  for (std::size_t i = 0; i < anchors_n; ++i) {
    pts.push_back({u(gen), u(gen)});
    vals.push_back(std::sin(4 * pts.back()[0]) * std::cos(3 * pts.back()[1]));
  }
  const auto theta = Modulus::power(0.5, 1.5);
  const auto model = ExtensionModel::build(AnchorSet(BoxDomain({{0, 1}, {0, 1}}), pts, vals), theta);
  const Grid probes(BoxDomain({{0, 1}, {0, 1}}), {64, 64});
  for (auto _ : state) benchmark::DoNotOptimize(model.eval(probes.points()));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * probes.size()));
}
BENCHMARK(BM_ExtensionEval)->Arg(64)->Arg(512)->Arg(4096);

void BM_PartialSums(benchmark::State& state) {
  SeriesSpec spec;
  spec.basis = state.range(0) == 0 ? Basis::faber_schauder : Basis::trig_smooth;
  spec.n_max = 1023;
  const auto path = draw_path(spec, 9);
  const auto grid = Grid::uniform(0, 1, 1025);
  const std::vector<std::size_t> ns{15, 63, 255, 1023};
  for (auto _ : state) benchmark::DoNotOptimize(partial_sums(path, ns, grid));
  state.SetLabel(to_string(spec.basis));
}
BENCHMARK(BM_PartialSums)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
