#include <benchmark/benchmark.h>

#include "mwu/generate.hpp"
#include "mwu/kernels.hpp"

namespace {

mwu::SparseNonnegMatrix bench_matrix(std::size_t m, std::size_t n) {
    mwu::gen::Rng rng(7);
    return mwu::gen::random_covering(rng, m, n, 1.0, 0.05, 0.1).C;
}

void row_products_serial(benchmark::State& state) {
    const auto C = bench_matrix(static_cast<std::size_t>(state.range(0)), 2000);
    std::vector<double> x(C.cols(), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(mwu::kernels::row_products_serial(C, x));
}

void row_products_parallel(benchmark::State& state) {
    const auto C = bench_matrix(static_cast<std::size_t>(state.range(0)), 2000);
    std::vector<double> x(C.cols(), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(mwu::kernels::row_products_parallel(C, x));
}

void col_products_serial(benchmark::State& state) {
    const auto C = bench_matrix(static_cast<std::size_t>(state.range(0)), 2000);
    std::vector<double> y(C.rows(), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(mwu::kernels::col_products_serial(C, y));
}

void col_products_parallel(benchmark::State& state) {
    const auto C = bench_matrix(static_cast<std::size_t>(state.range(0)), 2000);
    std::vector<double> y(C.rows(), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(mwu::kernels::col_products_parallel(C, y));
}

}  // namespace

BENCHMARK(row_products_serial)->Arg(1000)->Arg(8000);
BENCHMARK(row_products_parallel)->Arg(1000)->Arg(8000);
BENCHMARK(col_products_serial)->Arg(1000)->Arg(8000);
BENCHMARK(col_products_parallel)->Arg(1000)->Arg(8000);

BENCHMARK_MAIN();
