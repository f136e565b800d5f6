#include <gxray/basis.hpp>
#include <gxray/boundary.hpp>
#include <gxray/xray.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace gxray;

namespace {

const CurvatureParam cp(0.4);

CoeffTable table(int nmax) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  CoeffTable t(nmax);
  for (int n = 0; n <= nmax; ++n) {
    for (int k = 0; k <= n; ++k) t.set({n, k}, {normal(rng), normal(rng)});
  }
  return t;
}

DiskFunction phantom() {
  const CoeffTable t = table(6);
  return [t](cplx z) {
    cplx acc = 0.0;
    for (const auto& [idx, c] : t) acc += c * zernike_kappa_hat(idx, z, cp);
    return weight_kappa(z, cp) * acc;
  };
}

void BM_sinogram(benchmark::State& state) {
  const BoundaryGrid layout(cp, static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const DiskFunction f = phantom();
  const Exec exec = state.range(1) ? Exec::parallel : Exec::serial;
  for (auto _ : state) benchmark::DoNotOptimize(sinogram(f, layout, {}, exec));
}

void BM_sinogram_reference(benchmark::State& state) {
  const BoundaryGrid layout(cp, static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const DiskFunction f = phantom();
  for (auto _ : state) benchmark::DoNotOptimize(sinogram_reference(f, layout));
}

BoundaryFunction boundary_data() {
  return [](double b, double a) { return psi_over_mu({3, 1}, b, a, cp) + 0.5 * psi_over_mu({2, -1}, b, a, cp); };
}

void BM_adjoint_grid(benchmark::State& state) {
  const DiskGrid layout(cp, static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const BoundaryFunction g = boundary_data();
  const Exec exec = state.range(1) ? Exec::parallel : Exec::serial;
  for (auto _ : state) benchmark::DoNotOptimize(adjoint_grid(g, layout, 256, exec));
}

void BM_adjoint_grid_reference(benchmark::State& state) {
  const DiskGrid layout(cp, static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const BoundaryFunction g = boundary_data();
  for (auto _ : state) benchmark::DoNotOptimize(adjoint_grid_reference(g, layout, 256));
}

void BM_synthesize(benchmark::State& state) {
  const DiskGrid layout(cp, 128, 128);
  const CoeffTable c = table(static_cast<int>(state.range(0)));
  const Exec exec = state.range(1) ? Exec::parallel : Exec::serial;
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(c, layout, exec));
}

void BM_synthesize_reference(benchmark::State& state) {
  const DiskGrid layout(cp, 128, 128);
  const CoeffTable c = table(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_reference(c, layout));
}

void BM_c_minus(benchmark::State& state) {
  const BoundaryGrid layout(cp, 64, 64);
  const BoundaryGrid u = synthesize(table(8), layout);
  const Exec exec = state.range(1) ? Exec::parallel : Exec::serial;
  for (auto _ : state) benchmark::DoNotOptimize(c_minus(u, static_cast<int>(state.range(0)), exec));
}

}  // namespace

BENCHMARK(BM_sinogram)->ArgsProduct({{32, 64}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sinogram_reference)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_adjoint_grid)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_adjoint_grid_reference)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_synthesize)->ArgsProduct({{6, 12}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_synthesize_reference)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_c_minus)->ArgsProduct({{256, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
