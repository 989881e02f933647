#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ppwave/figures.hpp"
#include "ppwave/kernels.hpp"
#include "ppwave/verification.hpp"

using namespace ppwave;

namespace {

struct Field {
  std::vector<double> u, v, du, dv;
  explicit Field(std::size_t n) : u(n), v(n), du(n), dv(n) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = 0.01 * static_cast<double>(i);
      u[i] = 1.0 + std::tanh(x - 5.0);
      v[i] = 0.5 * u[i];
    }
  }
};

void bm_rhs(benchmark::State& state, kernels::Exec exec) {
  Field f(static_cast<std::size_t>(state.range(0)));
  const auto r = kernels::Reaction::make(5.9, 1.0, 3.0);
  for (auto _ : state) {
    kernels::rhs(exec, r, kernels::Boundary::NeumannZeroFlux, 0.01, f.u, f.v, f.du, f.dv);
    benchmark::DoNotOptimize(f.du.data());
    benchmark::DoNotOptimize(f.dv.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_autocorrelation(benchmark::State& state, kernels::Exec exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(0.013 * static_cast<double>(i));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::autocorrelation(exec, x, n / 2));
}

void bm_ode_residual(benchmark::State& state, kernels::Exec exec) {
  const auto spec = figure_setup(1).spec;
  ResidualOptions opts;
  opts.exec = exec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ode_residual(spec, -5.0, 5.0, static_cast<std::size_t>(state.range(0)), opts));
  }
}

}  // namespace

BENCHMARK_CAPTURE(bm_rhs, serial, kernels::Exec::Serial)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK_CAPTURE(bm_rhs, omp, kernels::Exec::OpenMP)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK_CAPTURE(bm_autocorrelation, serial, kernels::Exec::Serial)->Arg(4096)->Arg(20001);
BENCHMARK_CAPTURE(bm_autocorrelation, omp, kernels::Exec::OpenMP)->Arg(4096)->Arg(20001);
BENCHMARK_CAPTURE(bm_ode_residual, serial, kernels::Exec::Serial)->Arg(10001)->Arg(100001);
BENCHMARK_CAPTURE(bm_ode_residual, omp, kernels::Exec::OpenMP)->Arg(10001)->Arg(100001);

BENCHMARK_MAIN();
