// Microbenchmarks for the hot paths: spectrum enumeration, class counting,
// the counting functions, the singularity-side evaluator and the tail
// integral.  Not registered with ctest; run the pgt_bench binary directly.

#include <benchmark/benchmark.h>

#include <cmath>

#include "pgt/chebyshev.hpp"
#include "pgt/explicit_formulas.hpp"
#include "pgt/gallagher.hpp"
#include "pgt/spectrum.hpp"
#include "pgt/types.hpp"

namespace {

void BM_EnumerateSpectrum(benchmark::State& state) {
    const double bound = static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto spectrum = pgt::spectrum::enumerate_spectrum(bound);
        benchmark::DoNotOptimize(spectrum);
    }
}
BENCHMARK(BM_EnumerateSpectrum)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_ClassCountForTrace(benchmark::State& state) {
    const std::int64_t trace = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(pgt::spectrum::class_count_for_trace(trace));
}
BENCHMARK(BM_ClassCountForTrace)->Arg(101)->Arg(1001);

void BM_PsiJ(benchmark::State& state) {
    static const pgt::LengthSpectrum spectrum = pgt::spectrum::enumerate_spectrum(1.0e5);
    const int j = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pgt::chebyshev::psi_j(spectrum, 9.0e4, j));
}
BENCHMARK(BM_PsiJ)->Arg(1)->Arg(2)->Arg(3);

void BM_ExplicitPsiJ(benchmark::State& state) {
    const pgt::SingularityCatalog catalog =
        pgt::formulas::weyl_sample(pgt::ManifoldParams::real_hyperbolic(2), 1.0,
                                   static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(pgt::formulas::explicit_psi_j(catalog, 1.0e4, 2));
}
BENCHMARK(BM_ExplicitPsiJ)->Arg(100)->Arg(300);

void BM_GallagherTailIntegral(benchmark::State& state) {
    static const pgt::SingularityCatalog catalog =
        pgt::formulas::weyl_sample(pgt::ManifoldParams::real_hyperbolic(2), 1.0, 1000.0);
    const double y = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(pgt::gallagher::gallagher_tail_integral(catalog, 2, y, 1000.0));
}
BENCHMARK(BM_GallagherTailIntegral)->Arg(10)->Arg(100);

} // namespace

BENCHMARK_MAIN();
