// bench_kernels.cpp — Serial reference vs OpenMP kernels

#include <benchmark/benchmark.h>

#include "dqw/kernels.hpp"
#include "dqw/wigner.hpp"

using namespace dqw;

namespace {

const ModelParams kParams{40.0, 0.5};

template <kernels::Backend B>
void BM_dephased_window(benchmark::State& state) {
    const int half = static_cast<int>(state.range(0));
    const SeriesTables tables(kParams, truncation_for(kParams), half);
    Eigen::MatrixXd out;
    for (auto _ : state) {
        if constexpr (B == kernels::Backend::serial) {
            kernels::serial::dephased_window(tables, half, out);
        } else {
            kernels::omp::dephased_window(tables, half, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
}

template <kernels::Backend B>
void BM_wigner_grid(benchmark::State& state) {
    const int half = static_cast<int>(state.range(0));
    const auto trunc = truncation_for(kParams);
    const auto k = wigner::closed_k_nodes(256);
    std::vector<double> out(static_cast<std::size_t>(2 * half + 1) * k.size());
    for (auto _ : state) {
        if constexpr (B == kernels::Backend::serial) {
            kernels::serial::wigner_grid(kParams, trunc, -half, half, k, out);
        } else {
            kernels::omp::wigner_grid(kParams, trunc, -half, half, k, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
}

template <kernels::Backend B>
void BM_quadrature_block(benchmark::State& state) {
    const ModelParams p{10.0, 2.0};
    const oracle::PropagatorTable table(p, oracle::QuadratureSpec{static_cast<int>(state.range(0))});
    Eigen::MatrixXcd out;
    for (auto _ : state) {
        if constexpr (B == kernels::Backend::serial) {
            kernels::serial::quadrature_block(table, -20, 20, out);
        } else {
            kernels::omp::quadrature_block(table, -20, 20, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
}

template <kernels::Backend B>
void BM_probability_profile(benchmark::State& state) {
    const int half = static_cast<int>(state.range(0));
    const SeriesTables tables(kParams, truncation_for(kParams), half);
    std::vector<double> out(static_cast<std::size_t>(2 * half + 1));
    for (auto _ : state) {
        if constexpr (B == kernels::Backend::serial) {
            kernels::serial::probability_profile(tables, -half, half, out);
        } else {
            kernels::omp::probability_profile(tables, -half, half, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
}

} // namespace

BENCHMARK(BM_dephased_window<kernels::Backend::serial>)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dephased_window<kernels::Backend::omp>)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_wigner_grid<kernels::Backend::serial>)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_wigner_grid<kernels::Backend::omp>)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_quadrature_block<kernels::Backend::serial>)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_quadrature_block<kernels::Backend::omp>)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_probability_profile<kernels::Backend::serial>)->Arg(120)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_probability_profile<kernels::Backend::omp>)->Arg(120)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
