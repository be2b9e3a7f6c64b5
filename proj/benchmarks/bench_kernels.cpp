#include <benchmark/benchmark.h>

#include "quadpair/charsum.hpp"
#include "quadpair/counting.hpp"
#include "quadpair/delta.hpp"
#include "quadpair/modular.hpp"
#include "quadpair/oscint.hpp"

using namespace quadpair;

namespace {

const FormPair kPair = FormPair::canonical();

void BM_Jacobi(benchmark::State& state) {
    SquarefreeModulus q(11 * 13 * 17 * 19);
    i128 n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(jacobi(n, q));
        n = n * 31 + 7;
    }
}
BENCHMARK(BM_Jacobi);

void BM_RamanujanSum(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ramanujan_sum(state.range(0), 360));
}
BENCHMARK(BM_RamanujanSum)->Arg(720)->Arg(9699690);

void BM_SpOne(benchmark::State& state) {
    const Vec4 w{1, 2, 3, 4};
    for (auto _ : state) benchmark::DoNotOptimize(s_p_1(kPair, state.range(0), w));
}
BENCHMARK(BM_SpOne)->Arg(11)->Arg(47)->Arg(97)->Unit(benchmark::kMicrosecond);

// brute force over (Z/qcZ)^4 after factoring by coordinate
void BM_SqcBrute(benchmark::State& state) {
    CharSumParams params(kPair, 11, state.range(0), {1, 0, 2, 1});
    for (auto _ : state) benchmark::DoNotOptimize(s_qc_brute(params).value);
}
BENCHMARK(BM_SqcBrute)->Arg(3)->Arg(9)->Arg(27)->Unit(benchmark::kMillisecond);

void BM_DeltaReconstruct(benchmark::State& state) {
    DeltaKernel kernel(static_cast<double>(state.range(0)));
    i128 n = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel.delta_reconstruct(n));
        n = (n + 1) % 50;
    }
}
BENCHMARK(BM_DeltaReconstruct)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_SpectralIntegral(benchmark::State& state) {
    for (auto _ : state) {
        SpectralIntegral si(kPair, 11, static_cast<double>(state.range(0)), 8.0);
        benchmark::DoNotOptimize(si.at({1, 0, 0, 1}));
    }
}
BENCHMARK(BM_SpectralIntegral)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_EnumerateZeros(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_psi1_zeros(kPair, state.range(0)).size());
}
BENCHMARK(BM_EnumerateZeros)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SieveDecompose(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sieve_decompose(kPair, state.range(0), 5).mstar);
}
BENCHMARK(BM_SieveDecompose)->Arg(64)->Arg(125)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
