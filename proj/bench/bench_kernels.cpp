// Serial reference kernels against their OpenMP twins.

#include "conedini/generators.hpp"
#include "conedini/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace conedini;

namespace {

const AtomicMeasure& mixture() {
  static const AtomicMeasure mu = gen_mixture(2000, 6, 1);
  return mu;
}

const AnnulusPattern& pattern() {
  static const AnnulusPattern p(Cone(Subspace::coordinate(2, 1), 1.0));
  return p;
}

std::vector<Offset> cells(int k) {
  const GenerationIndex& lvl = mixture().level(k);
  std::vector<Offset> out;
  for (std::size_t c = 0; c < lvl.size(); ++c) out.push_back(lvl.cube(c).j);
  return out;
}

template <auto Kernel>
void annulus_masses(benchmark::State& state) {
  const GenerationIndex& lvl = mixture().level(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(lvl, pattern()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lvl.size()));
}

template <auto Kernel>
void chain_sums(benchmark::State& state) {
  std::vector<const GenerationIndex*> levels;
  std::vector<std::vector<double>> values;
  for (int k = 0; k <= 8; ++k) {
    levels.push_back(&mixture().level(k));
    values.emplace_back(levels.back()->size(), 1.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(levels, values, mixture().size()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(mixture().size()));
}

template <auto Kernel>
void cone_violation(benchmark::State& state) {
  // Points on a 1/2-Lipschitz graph: no violation, so the full pair set is scanned.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    const double x = u(rng);
    pts.push_back({x, 0.5 * std::sin(x)});
  }
  const Cone cone(Subspace::coordinate(2, 1), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(pts, cone));
  state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void annulus_hits(benchmark::State& state) {
  const auto c = cells(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(c, pattern()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.size()));
}

}  // namespace

BENCHMARK(annulus_masses<kernels::annulus_masses_serial>)->Name("annulus_masses/serial")->Arg(4)->Arg(8);
BENCHMARK(annulus_masses<kernels::annulus_masses_omp>)->Name("annulus_masses/omp")->Arg(4)->Arg(8);
BENCHMARK(chain_sums<kernels::chain_sums_serial>)->Name("chain_sums/serial");
BENCHMARK(chain_sums<kernels::chain_sums_omp>)->Name("chain_sums/omp");
BENCHMARK(cone_violation<kernels::first_cone_violation_serial>)->Name("cone_violation/serial")->Arg(1000)->Arg(4000);
BENCHMARK(cone_violation<kernels::first_cone_violation_omp>)->Name("cone_violation/omp")->Arg(1000)->Arg(4000);
BENCHMARK(annulus_hits<kernels::annulus_hits_serial>)->Name("annulus_hits/serial")->Arg(4)->Arg(8);
BENCHMARK(annulus_hits<kernels::annulus_hits_omp>)->Name("annulus_hits/omp")->Arg(4)->Arg(8);

BENCHMARK_MAIN();
