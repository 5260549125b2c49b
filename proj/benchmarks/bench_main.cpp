#include "hsum/continuation.hpp"
#include "hsum/identity_db.hpp"
#include "hsum/linalg.hpp"
#include "hsum/stuffle.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace hsum;

namespace {

// All 80 sums at one fresh point per iteration; the memo table is bypassed
// by moving the point.
void BM_EvaluateAll(benchmark::State& state)
{
    const int digits = static_cast<int>(state.range(0));
    EvalContext ctx(digits);
    const mpfr_prec_t bits = digits_to_bits(digits);
    evaluate_all(Complex(0.25, 0.75, bits), ctx);
    double t = 0;
    for (auto _ : state) {
        t += 1e-3;
        benchmark::DoNotOptimize(evaluate_all(Complex(-1.3 + t, 0.6 + t, bits), ctx));
    }
}
BENCHMARK(BM_EvaluateAll)->Arg(30)->Arg(60)->Arg(120)->Arg(250)->Unit(benchmark::kMillisecond);

// Memoized lookup after the first call.
void BM_Stuffle(benchmark::State& state)
{
    IndexVector a{-1, 1}, b{2, -1};
    for (auto _ : state) benchmark::DoNotOptimize(stuffle_product(a, b));
}
BENCHMARK(BM_Stuffle);

void BM_PivotedQR(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const mpfr_prec_t bits = digits_to_bits(250);
    std::mt19937_64 rng(1);
    Matrix a(2 * n, n, bits);
    for (int i = 0; i < 2 * n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Real(static_cast<double>(rng() % 100000) / 1000.0, bits);
    for (auto _ : state) benchmark::DoNotOptimize(PivotedQR(a));
}
BENCHMARK(BM_PivotedQR)->Arg(40)->Arg(80)->Arg(161)->Unit(benchmark::kMillisecond);

void BM_VerifyCorpus(benchmark::State& state)
{
    CorpusFile f = load_corpus(HSUM_DATA_DIR "/reflection_w4.txt");
    for (auto _ : state) {
        EvalContext ctx(30);
        ctx.clear_cache();
        for (const IdentityRecord& r : f.records) benchmark::DoNotOptimize(verify_identity(r, 20, 1e-10, 1, ctx));
    }
}
BENCHMARK(BM_VerifyCorpus)->Unit(benchmark::kSecond)->Iterations(1);

} // namespace
BENCHMARK_MAIN();
