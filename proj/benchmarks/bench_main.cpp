#include <benchmark/benchmark.h>

#include "ncgrass/curvature.hpp"
#include "ncgrass/hypersurface.hpp"
#include "ncgrass/models.hpp"
#include "ncgrass/rng.hpp"
#include "ncgrass/root_system.hpp"
#include "ncgrass/spectral.hpp"

namespace {

using namespace ncgrass;

TangentVector random_p_vector(int m, SplitMix64& rng) {
    TangentVector v = TangentVector::zero(m);
    for (int row = 0; row < 2; ++row)
        for (int col = 0; col < m; ++col)
            v += TangentVector::elementary(m, row, col,
                                           Complex(rng.next_symmetric(), rng.next_symmetric()));
    return v;
}

void BM_HermitianEig(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SplitMix64 rng(7);
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const Complex z(rng.next_symmetric(), i == j ? 0.0 : rng.next_symmetric());
            a(i, j) = z;
            a(j, i) = std::conj(z);
        }
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(a));
}
BENCHMARK(BM_HermitianEig)->Arg(8)->Arg(16)->Arg(32);

void BM_RootDecomposition(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(restricted_root_decomposition(m));
}
BENCHMARK(BM_RootDecomposition)->Arg(2)->Arg(4)->Arg(6);

void BM_CurvatureFormula(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    SplitMix64 rng(7);
    const TangentVector x = random_p_vector(m, rng);
    const TangentVector y = random_p_vector(m, rng);
    const TangentVector z = random_p_vector(m, rng);
    for (auto _ : state) benchmark::DoNotOptimize(R_formula(x, y, z));
}
BENCHMARK(BM_CurvatureFormula)->Arg(3)->Arg(6);

void BM_CurvatureBracket(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    SplitMix64 rng(7);
    const TangentVector x = random_p_vector(m, rng);
    const TangentVector y = random_p_vector(m, rng);
    const TangentVector z = random_p_vector(m, rng);
    for (auto _ : state) benchmark::DoNotOptimize(R_bracket(x, y, z));
}
BENCHMARK(BM_CurvatureBracket)->Arg(3)->Arg(6);

void BM_HorosphereSpectrum(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const CurvatureContext ctx = make_curvature_context(m);
    for (auto _ : state) benchmark::DoNotOptimize(horosphere_spectrum(ctx, 0.2));
}
BENCHMARK(BM_HorosphereSpectrum)->Arg(3)->Arg(5);

void BM_TubeSpectrum(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const CurvatureContext ctx = make_curvature_context(m);
    const TotallyGeodesicTangentSplit split = su_submodel(m);
    for (auto _ : state) benchmark::DoNotOptimize(tube_spectrum(ctx, split, 1.0));
}
BENCHMARK(BM_TubeSpectrum)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
