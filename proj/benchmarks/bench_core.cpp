#include <benchmark/benchmark.h>

#include <numbers>

#include "niqsim/circuit.hpp"
#include "niqsim/correlations.hpp"
#include "niqsim/intensities.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

void BM_output_state(benchmark::State& state) {
  const niqsim::CircuitParams p{1.2, 0.4, 0.86,
                                niqsim::NoiseModel::gaussian(0.8)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(niqsim::output_state(p));
  }
}
BENCHMARK(BM_output_state);

void BM_discord(benchmark::State& state) {
  const niqsim::DensityOperator rho = niqsim::output_state(
      {kPi / 2, 0.0, 1.0, niqsim::NoiseModel::gaussian(1.0)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(niqsim::discord_A_given_B(rho).value);
  }
}
BENCHMARK(BM_discord);

void BM_concurrence(benchmark::State& state) {
  const niqsim::DensityOperator rho = niqsim::output_state(
      {kPi / 2, 0.0, 1.0, niqsim::NoiseModel::gaussian(1.0)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(niqsim::concurrence(rho));
  }
}
BENCHMARK(BM_concurrence);

void BM_contrast_numeric(benchmark::State& state) {
  const niqsim::NoiseModel noise = niqsim::NoiseModel::gaussian(0.62);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        niqsim::contrast_numeric([&](double phi) {
          return niqsim::d0_filtered({0.0, phi, 1.0, noise},
                                     niqsim::SpinFilter::z_up());
        }).value);
  }
}
BENCHMARK(BM_contrast_numeric);

void BM_sample_output(benchmark::State& state) {
  const niqsim::CircuitParams p{kPi / 2, 0.0, 1.0,
                                niqsim::NoiseModel::gaussian(1.0)};
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(niqsim::sample_output(p, 1, n));
  }
  state.SetItemsProcessed(static_cast<long>(state.iterations()) *
                          static_cast<long>(n));
}
BENCHMARK(BM_sample_output)->Arg(1000)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
