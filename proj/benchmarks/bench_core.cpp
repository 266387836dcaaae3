// Microbenchmarks for the subspace kernel and the samplers, sized to the
// ambient dimensions the verification actually uses (n <= 5, so 2N <= 22).

#include <benchmark/benchmark.h>

#include "springer/flag.hpp"
#include "springer/harness.hpp"
#include "springer/matching.hpp"
#include "springer/nilspace.hpp"
#include "springer/sphere.hpp"

using namespace springer;

namespace {

const Tolerances tol;

Eigen::MatrixXcd random_columns(int rows, int cols, RngStream& rng) {
    Eigen::MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            m(r, c) = rng.cgaussian();
        }
    }
    return m;
}

void BM_Span(benchmark::State& state) {
    RngStream rng(1, "bench-span", 0);
    const Eigen::MatrixXcd m = random_columns(18, 9, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(span(m, tol));
    }
}
BENCHMARK(BM_Span);

void BM_Intersect(benchmark::State& state) {
    RngStream rng(2, "bench-intersect", 0);
    const Subspace a = span(random_columns(18, 10, rng), tol);
    const Subspace b = span(random_columns(18, 10, rng), tol);
    for (auto _ : state) {
        benchmark::DoNotOptimize(intersect(a, b, tol));
    }
}
BENCHMARK(BM_Intersect);

void BM_ShiftPreimage(benchmark::State& state) {
    const NilpotentSpace space(9);
    RngStream rng(3, "bench-preimage", 0);
    const Subspace w = space.random_stable(2, true, true, rng, tol);
    for (auto _ : state) {
        benchmark::DoNotOptimize(preimage(space.shift(), w, tol));
    }
}
BENCHMARK(BM_ShiftPreimage);

void BM_LiftLine(benchmark::State& state) {
    const NilpotentSpace space(9);
    RngStream rng(4, "bench-lift", 0);
    const Subspace w = space.random_stable(1, false, true, rng, tol);
    const Eigen::Vector2cd target(M_SQRT1_2, M_SQRT1_2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(space.lift_line(w, target, tol));
    }
}
BENCHMARK(BM_LiftLine);

void BM_SampleComponent(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const NilpotentSpace space = NilpotentSpace::for_flag_length(2 * n);
    const Matching a = enumerate_matchings(n).back();
    std::uint64_t trial = 0;
    for (auto _ : state) {
        RngStream rng(5, "bench-sample", trial++);
        benchmark::DoNotOptimize(sample_component(space, a, rng, tol));
    }
}
BENCHMARK(BM_SampleComponent)->Arg(2)->Arg(3)->Arg(4);

void BM_RoundTrip(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const NilpotentSpace space = NilpotentSpace::for_flag_length(m);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        RngStream rng(6, "bench-roundtrip", trial++);
        const LineTuple t = random_tuple(m, rng);
        const Flag flag = lines_to_flag(t, space, tol);
        benchmark::DoNotOptimize(flag_to_lines(flag, tol));
    }
}
BENCHMARK(BM_RoundTrip)->Arg(4)->Arg(8);

void BM_CorrespondenceTrial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const NilpotentSpace space = NilpotentSpace::for_flag_length(2 * n);
    const Matching a = enumerate_matchings(n).back();
    std::uint64_t t = 0;
    for (auto _ : state) {
        RngStream rng(7, "bench-main", t++);
        benchmark::DoNotOptimize(trial::correspondence(space, a, rng, tol));
    }
}
BENCHMARK(BM_CorrespondenceTrial)->Arg(2)->Arg(4);

} // namespace

BENCHMARK_MAIN();
