#include <benchmark/benchmark.h>

#include "hfm/flows.hpp"
#include "hfm/forms.hpp"
#include "hfm/fourier.hpp"
#include "hfm/modified_norm.hpp"
#include "hfm/norms.hpp"
#include "hfm/presets.hpp"
#include "hfm/space_time.hpp"

namespace {

using namespace hfm;

Field bump(int d, std::size_t n, double l) { return sample(two_bump_preset(d), make_grid(d, l, n)); }

void BM_Fourier1D(benchmark::State& state) {
  const Field f = bump(1, static_cast<std::size_t>(state.range(0)), 16.0);
  for (auto _ : state) benchmark::DoNotOptimize(fourier(f));
}
BENCHMARK(BM_Fourier1D)->Arg(256)->Arg(1024)->Arg(4096);

void BM_HeatKernel2D(benchmark::State& state) {
  const Field f = bump(2, static_cast<std::size_t>(state.range(0)), 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(heat_evolve_kernel(f, 0.5, f.grid()));
}
BENCHMARK(BM_HeatKernel2D)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Strichartz166(benchmark::State& state) {
  const Field f = bump(1, 512, 16.0);
  MixedNormSpec s = make_triple(1, 6, 6);
  s.s_nodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(strichartz_norm(f, s));
}
BENCHMARK(BM_Strichartz166)->Arg(65)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

void BM_Strichartz244(benchmark::State& state) {
  const Field f = bump(2, static_cast<std::size_t>(state.range(0)), 8.0);
  MixedNormSpec s = make_triple(2, 4, 4);
  s.band_tol = 1e-7;
  for (auto _ : state) benchmark::DoNotOptimize(strichartz_norm(f, s));
}
BENCHMARK(BM_Strichartz244)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_QFlow(benchmark::State& state) {
  const Field f = bump(1, 512, 16.0);
  const MixedNormSpec s = make_triple(1, 8, 4);
  for (auto _ : state) benchmark::DoNotOptimize(q_flow(f, s, 0.3));
}
BENCHMARK(BM_QFlow)->Unit(benchmark::kMillisecond);

void BM_ModifiedNorm(benchmark::State& state) {
  const Field f = bump(1, 256, 16.0);
  ModifiedNormSpec s = make_modified(1, 8.0);
  s.zeta_nodes = s.zeta_tail_nodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(modified_norm(f, s));
}
BENCHMARK(BM_ModifiedNorm)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_HzFormD1(benchmark::State& state) {
  const Field f = bump(1, 256, 16.0);
  FormSpec fs;
  fs.points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hz_form(f, HzVariant::d1_sextic, fs));
}
BENCHMARK(BM_HzFormD1)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
