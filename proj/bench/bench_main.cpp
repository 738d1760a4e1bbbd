// Serial reference against the OpenMP kernels. Set OMP_NUM_THREADS to vary
// the thread count.

#include <benchmark/benchmark.h>

#include "detequiv/classify.hpp"
#include "detequiv/generate.hpp"

using namespace detequiv;

namespace {

std::pair<Kernel, Kernel> instance(std::size_t n) {
    GenConfig cfg;
    cfg.n = n;
    cfg.spec = FieldSpec::prime(1'000'000'007);
    cfg.seed = 42;
    const auto k = gen_random_kernel(cfg);
    auto q = gen_conjugated_pair(k, 43, false).first;
    return {k, std::move(q)};
}

void BM_MinorsSerial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto [k, q] = instance(n);
    for (auto _ : state) benchmark::DoNotOptimize(check_determinantal_equivalence_serial(k, q, n));
    state.SetItemsProcessed(state.iterations() * ((std::int64_t{1} << n) - 1));
}

void BM_MinorsParallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto [k, q] = instance(n);
    for (auto _ : state) benchmark::DoNotOptimize(check_determinantal_equivalence(k, q, n));
    state.SetItemsProcessed(state.iterations() * ((std::int64_t{1} << n) - 1));
}

void BM_ClassifySerial(benchmark::State& state) {
    const auto [k, q] = instance(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(classify_all_serial(k, q));
}

void BM_ClassifyParallel(benchmark::State& state) {
    const auto [k, q] = instance(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(classify_all(k, q));
}

}  // namespace

BENCHMARK(BM_MinorsSerial)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinorsParallel)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifySerial)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifyParallel)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
