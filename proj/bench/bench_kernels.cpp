// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to compare
// scaling; the two variants produce identical numbers (see the parity tests).

#include "fracq/kernels.hpp"
#include "fracq/random.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace fracq;
using kernels::cplx;

namespace {

std::vector<cplx> random_modes(std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed, 0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(rng.normal(), rng.normal());
  return v;
}

template <Execution E>
void BM_MittagLefflerMap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<cplx> args(n);
  for (std::size_t j = 0; j < n; ++j) args[j] = -0.01 * static_cast<double>(j % 2000);
  std::vector<cplx> out(n);
  for (auto _ : state) {
    kernels::mittag_leffler_map<E>(0.7, args, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Execution E>
void BM_L1Step(benchmark::State& state) {
  const auto modes = static_cast<std::size_t>(state.range(0));
  const std::size_t steps = 200;
  const auto init = random_modes(modes, 1);
  std::vector<double> w(steps);
  for (std::size_t j = 0; j < steps; ++j) w[j] = std::pow(j + 1.0, 0.4) - std::pow(static_cast<double>(j), 0.4);
  std::vector<double> diag(modes);
  for (std::size_t m = 0; m < modes; ++m) diag[m] = w[0] + 1e-3 * static_cast<double>(m * m);
  for (auto _ : state) {
    state.PauseTiming();
    kernels::L1History h(init, steps);
    state.ResumeTiming();
    for (std::size_t s = 0; s < steps; ++s) kernels::l1_step<E>(h, w, diag);
    benchmark::DoNotOptimize(h.current.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<long>(steps));
}

template <Execution E>
void BM_StableWalks(benchmark::State& state) {
  const auto paths = static_cast<std::size_t>(state.range(0));
  const std::size_t steps = 100;
  std::vector<double> pos(paths * (steps + 1));
  for (auto _ : state) {
    kernels::stable_walks<E>(1.5, 1.0, steps, 3, 0, paths, pos);
    benchmark::DoNotOptimize(pos.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<long>(steps));
}

template <Execution E>
void BM_AbsMoments(benchmark::State& state) {
  const auto paths = static_cast<std::size_t>(state.range(0));
  const std::size_t times = 101;
  std::vector<double> pos(paths * times);
  kernels::stable_walks<Execution::parallel>(1.5, 1.0, times - 1, 5, 0, paths, pos);
  std::vector<double> out(times);
  for (auto _ : state) {
    kernels::abs_moments<E>(pos, paths, times, 0.75, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<long>(times));
}

template <Execution E>
void BM_ScaleModes(benchmark::State& state) {
  auto v = random_modes(static_cast<std::size_t>(state.range(0)), 2);
  std::vector<double> f(v.size(), 0.999999);
  for (auto _ : state) {
    kernels::scale_modes<E>(v, f);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_MittagLefflerMap<Execution::serial>)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MittagLefflerMap<Execution::parallel>)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_L1Step<Execution::serial>)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_L1Step<Execution::parallel>)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StableWalks<Execution::serial>)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StableWalks<Execution::parallel>)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AbsMoments<Execution::serial>)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AbsMoments<Execution::parallel>)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScaleModes<Execution::serial>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_ScaleModes<Execution::parallel>)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
