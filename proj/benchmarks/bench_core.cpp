#include <benchmark/benchmark.h>

#include "sic/fiducial_search.hpp"
#include "sic/lattice.hpp"
#include "sic/number_theory.hpp"
#include "sic/recognition.hpp"
#include "sic/rng.hpp"
#include "sic/wh_group.hpp"

using namespace sic;

static void BM_ApplyDisplacement(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    DimensionContext ctx = make_context(d, 256);
    PrecisionGuard guard(256);
    CVector v(d), out;
    for (int j = 0; j < d; ++j) v[j] = Complex(Real(j + 1), Real(d - j));
    normalize(v);
    for (auto _ : state) {
        apply_displacement(ctx, {1, 2}, v, out);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_ApplyDisplacement)->Arg(7)->Arg(16)->Arg(48);

static void BM_CliffordUnitary(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    DimensionContext ctx = make_context(d, 128);
    SymplecticMatrix f = zauner_matrix(ctx);
    for (auto _ : state) {
        UnitaryOperator u = clifford_unitary(ctx, f);
        benchmark::DoNotOptimize(u);
    }
}
BENCHMARK(BM_CliffordUnitary)->Arg(7)->Arg(16);

static void BM_FramePotential(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    DimensionContext ctx = make_context(d, 256);
    PrecisionGuard guard(256);
    SplitMix64 rng(1);
    CVector v(d);
    for (auto& z : v) z = Complex(Real(rng.gaussian()), Real(rng.gaussian()));
    normalize(v);
    for (auto _ : state) {
        Real fp = frame_potential(ctx, v);
        benchmark::DoNotOptimize(fp);
    }
}
BENCHMARK(BM_FramePotential)->Arg(5)->Arg(7);

static void BM_Search(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    DimensionContext ctx = make_context(d, 256);
    for (auto _ : state) {
        SearchConfig cfg;
        cfg.rng_seed = 1;
        Fiducial f = search(ctx, cfg);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_Search)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_LLL(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SplitMix64 rng(5);
    for (auto _ : state) {
        state.PauseTiming();
        std::vector<std::vector<Int>> b(n, std::vector<Int>(n));
        for (auto& row : b)
            for (auto& x : row)
                x = static_cast<int64_t>(rng.next() % 2000001) - 1000000;
        state.ResumeTiming();
        lll_reduce(b);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_LLL)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_PellFundamental(benchmark::State& state) {
    for (auto _ : state) {
        auto r = pell_fundamental(199);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_PellFundamental);

static void BM_RecognizeSqrt2(benchmark::State& state) {
    PrecisionGuard guard(512 + 64);
    Complex x(sqrt(Real(2)));
    RecognitionConfig cfg;
    for (auto _ : state) {
        MinimalPolynomial p = recognize_algebraic(x, cfg);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_RecognizeSqrt2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
