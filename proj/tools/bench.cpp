#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "smrprec/matrix.hpp"
#include "smrprec/regularize.hpp"

namespace {

using namespace smrprec;

ComplexMatrix random_hpd(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix h(n, n);
    for (auto& v : h.entries()) v = cx{gauss(rng), gauss(rng)};
    ComplexMatrix a = matmul_serial(h, adjoint(h));
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 0.5;
    return a;
}

void bm_matmul_serial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ComplexMatrix a = random_hpd(n, 1);
    const ComplexMatrix b = random_hpd(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(matmul_serial(a, b));
}

void bm_matmul_parallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ComplexMatrix a = random_hpd(n, 1);
    const ComplexMatrix b = random_hpd(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(matmul(a, b));
}

void bm_list_regularize(benchmark::State& state) {
    const auto threads = static_cast<int>(state.range(0));
    const ComplexMatrix a = random_hpd(48, 3);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(threads > 0 ? threads : saved);
    for (auto _ : state) benchmark::DoNotOptimize(list_regularize(a, 1.0, 30, 1e-10));
    omp_set_num_threads(saved);
}

}  // namespace

BENCHMARK(bm_matmul_serial)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bm_matmul_parallel)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bm_list_regularize)->Arg(1)->Arg(-1)->Name("bm_list_regularize_threads");

BENCHMARK_MAIN();
