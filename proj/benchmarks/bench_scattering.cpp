#include <benchmark/benchmark.h>

#include "scattopo/filter_bank.hpp"
#include "scattopo/generators.hpp"
#include "scattopo/scattering.hpp"
#include "scattopo/signal.hpp"

using namespace scattopo;

namespace {

Signal probe(const Grid& grid) { return make_bandlimited_noise(grid, grid.nyquist() / 4.0, 7); }

void bm_analyze_roundtrip(benchmark::State& state) {
  const Grid grid(static_cast<std::size_t>(state.range(0)), 32.0);
  const Signal f = probe(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize(analyze(f)));
  }
  state.SetComplexityN(state.range(0));
}

void bm_build_wh_bank(benchmark::State& state) {
  const Grid grid(static_cast<std::size_t>(state.range(0)), 32.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_wh_bank(WhParams{1.0, 1.0}, grid));
  }
}

void bm_build_wavelet_bank(benchmark::State& state) {
  const Grid grid(static_cast<std::size_t>(state.range(0)), 32.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_wavelet_bank(WaveletParams{2.0}, grid));
  }
}

void bm_verify_parseval(benchmark::State& state) {
  const Grid grid(static_cast<std::size_t>(state.range(0)), 32.0);
  const FilterBank bank = build_wh_bank(WhParams{1.0, 1.0}, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_parseval(bank));
  }
}

void bm_propagate_depth(benchmark::State& state) {
  const Grid grid(4096, 32.0);
  const FilterBank bank = build_wh_bank(WhParams{1.0, 1.0}, grid);
  const Signal f = probe(grid);
  PropagateOptions opt;
  opt.depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(f, bank, opt));
  }
}

void bm_propagate_full_expansion(benchmark::State& state) {
  const Grid grid(512, 8.0);
  const FilterBank bank = build_wh_bank(WhParams{0.5, 1.0}, grid);
  const Signal f = probe(grid);
  PropagateOptions opt;
  opt.depth = static_cast<int>(state.range(0));
  opt.node_filter = NodeFilter::all;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(f, bank, opt));
  }
}

void bm_modulus(benchmark::State& state) {
  const Grid grid(static_cast<std::size_t>(state.range(0)), 32.0);
  const Signal f = probe(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(modulus(f));
  }
}

BENCHMARK(bm_analyze_roundtrip)->Arg(1024)->Arg(4096)->Arg(16384);
BENCHMARK(bm_build_wh_bank)->Arg(4096)->Arg(16384);
BENCHMARK(bm_build_wavelet_bank)->Arg(4096)->Arg(16384);
BENCHMARK(bm_verify_parseval)->Arg(4096)->Arg(16384);
BENCHMARK(bm_propagate_depth)->DenseRange(1, 4);
BENCHMARK(bm_propagate_full_expansion)->DenseRange(1, 2);
BENCHMARK(bm_modulus)->Arg(4096)->Arg(65536);

}  // namespace

BENCHMARK_MAIN();
