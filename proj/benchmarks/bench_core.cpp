#include <benchmark/benchmark.h>

#include <cstdint>
#include <numbers>
#include <vector>

#include "spinlimit/bell.hpp"
#include "spinlimit/classical.hpp"
#include "spinlimit/rng.hpp"
#include "spinlimit/semiclassical.hpp"
#include "spinlimit/singlet.hpp"
#include "spinlimit/statistics.hpp"
#include "spinlimit/wigner.hpp"

using namespace spinlimit;

namespace {

void BM_DMatrix(benchmark::State& state) {
  const SpinNumber j(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(d_matrix(j, 1.1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DMatrix)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNCubed);

void BM_DElement(benchmark::State& state) {
  const SpinNumber j(static_cast<int>(state.range(0)));
  const MagneticIndex m(j.is_integer() ? 0 : 1);
  for (auto _ : state) benchmark::DoNotOptimize(d_element(j, m, -m, 1.1));
}
BENCHMARK(BM_DElement)->RangeMultiplier(4)->Range(8, 256);

void BM_JointDistribution(benchmark::State& state) {
  const SpinNumber j(static_cast<int>(state.range(0)));
  const auto geom = MeasurementGeometry::from_angle(std::numbers::pi / 2);
  for (auto _ : state) benchmark::DoNotOptimize(joint_distribution(j, geom));
}
BENCHMARK(BM_JointDistribution)->Arg(20)->Arg(100)->Arg(180);

void BM_CorrectionGrid(benchmark::State& state) {
  const SpinNumber j(static_cast<int>(state.range(0)));
  const auto geom = MeasurementGeometry::from_angle(std::numbers::pi / 2);
  for (auto _ : state) benchmark::DoNotOptimize(correction_grid(j, geom));
}
BENCHMARK(BM_CorrectionGrid)->Arg(20)->Arg(180);

void BM_ClassicalSampling(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    double acc = 0.0;
    for_each_classical_sample(1.0, n, 7, [&](const ClassicalSample& s) { acc += s.k * s.l; });
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_ClassicalSampling)->Arg(1 << 16);

void BM_ClassicalBounds(benchmark::State& state) {
  const SpinNumber j(static_cast<int>(state.range(0)));
  RngStream rng(CounterRng(3));
  const int n = j.dim();
  std::vector<std::int64_t> c(4 * n * n);
  for (auto& v : c) v = rng.uniform_int(-3, 3);
  const BellInequality ineq{j, chsh_optimal_settings(), CoefficientTensor(j, c), std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(classical_bounds(ineq));
  state.SetComplexityN(n);
}
BENCHMARK(BM_ClassicalBounds)->DenseRange(1, 14, 1)->Complexity(benchmark::oNCubed);

void BM_QuantumValue(benchmark::State& state) {
  const SpinNumber j(static_cast<int>(state.range(0)));
  const BellInequality ineq{j, chsh_optimal_settings(), chsh_tensor(j), std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(quantum_value(ineq));
}
BENCHMARK(BM_QuantumValue)->Arg(1)->Arg(14);

void BM_PhaseCheck(benchmark::State& state) {
  const auto j = SpinNumber::from_int(50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        phase_check(j, MagneticIndex::from_int(5), MagneticIndex::from_int(-20), 1.0, 2.0));
  }
}
BENCHMARK(BM_PhaseCheck);

}  // namespace

BENCHMARK_MAIN();
