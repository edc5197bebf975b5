#include <benchmark/benchmark.h>

#include <random>

#include "iwalg/verify.hpp"

using namespace iwalg;

namespace {

const Precision kPrec{4, 8};

Poly b(int i, int k = 1) {
    return Poly::monomial(Monomial::var(static_cast<std::size_t>(i - 1), static_cast<std::uint16_t>(k)));
}

void BM_AbelianMultiply(benchmark::State& state) {
    Ring ring = RingContext::abelian(3, static_cast<int>(state.range(0)), kPrec);
    std::mt19937_64 rng(1);
    Element x = random_element(ring, kPrec, rng, 6, 3), y = random_element(ring, kPrec, rng, 6, 3);
    for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_AbelianMultiply)->Arg(1)->Arg(2)->Arg(3);

void BM_HeisenbergMultiply(benchmark::State& state) {
    const Precision q{4, 6};
    Ring h = RingContext::congruence_heisenberg(3, q);
    std::mt19937_64 rng(2);
    Element x = random_element(h, q, rng, 6, 3), y = random_element(h, q, rng, 6, 3);
    for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_HeisenbergMultiply);

void BM_GradedGroebner(benchmark::State& state) {
    auto x = [](int i) { return Poly::monomial(Monomial::var(static_cast<std::size_t>(i))); };
    GradedSubmodule s(3, 4, 1, {{x(1) * x(1) - x(0) * x(2)}, {x(1) * x(3) - x(2) * x(2)}, {x(0) * x(3) - x(1) * x(2)}});
    for (auto _ : state) benchmark::DoNotOptimize(groebner(s));
}
BENCHMARK(BM_GradedGroebner);

void BM_Delta(benchmark::State& state) {
    Ring ring = RingContext::abelian(3, 2, kPrec);
    Presentation m = Presentation::make(ring, kPrec, 2, {{Poly::constant(9), b(1)}, {b(2, 2), Poly::constant(3)}});
    for (auto _ : state) benchmark::DoNotOptimize(delta(m));
}
BENCHMARK(BM_Delta)->Unit(benchmark::kMillisecond);

void BM_ResolveResidueField(benchmark::State& state) {
    Ring ring = RingContext::abelian(3, static_cast<int>(state.range(0)), kPrec);
    Presentation k = residue_field(ring, kPrec);
    for (auto _ : state) benchmark::DoNotOptimize(minimal_free_resolution(k));
}
BENCHMARK(BM_ResolveResidueField)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Invariants(benchmark::State& state) {
    Ring ring = RingContext::abelian(3, 1, kPrec);
    Presentation m = Presentation::make(ring, kPrec, 2, {{Poly::constant(3), Poly()}, {b(1), Poly::constant(27)}});
    for (auto _ : state) benchmark::DoNotOptimize(invariants(m));
}
BENCHMARK(BM_Invariants)->Unit(benchmark::kMillisecond);

void BM_CorpusRun(benchmark::State& state) {
    CorpusConfig cfg;
    cfg.count = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(corpus_run(cfg, 1, 2));
}
BENCHMARK(BM_CorpusRun)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
