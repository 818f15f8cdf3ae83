#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "oatk/hash.hpp"
#include "oatk/oa.hpp"
#include "oatk/primes.hpp"
#include "oatk/verify.hpp"

namespace {

// Per-evaluation cost of the hash as the independence strength grows. The
// multiply-add count should track t exactly; wall time should follow.
void BM_hash_eval(benchmark::State& state) {
    const std::uint32_t t = static_cast<std::uint32_t>(state.range(0));
    const std::uint64_t m = 1 << 20;
    oatk::HashFunction h = oatk::HashFunction::create(16, m, t, 42);
    std::uint64_t x = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(h.eval(x));
        x = (x % m) + 1;
    }
    oatk::EvalStats stats;
    h.eval(1, &stats);
    state.counters["mul_adds"] = static_cast<double>(stats.mul_adds);
}
BENCHMARK(BM_hash_eval)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

// Row emission rate of the streaming builder.
void BM_build_rows(benchmark::State& state) {
    const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    const oatk::BuildPlan plan = oatk::plan_rs(n, 4, 2);
    oatk::BuildOptions opts;
    opts.max_cells = 1ull << 40;
    std::uint64_t rows = 0;
    for (auto _ : state) {
        rows = 0;
        oatk::build_oa_stream(
            plan,
            [&](std::span<const std::uint32_t> row, std::uint64_t repeat) {
                benchmark::DoNotOptimize(row.data());
                rows += repeat;
            },
            opts);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * rows));
}
BENCHMARK(BM_build_rows)->Arg(2)->Arg(6)->Arg(12);

// Prime selection: deterministic scan vs seeded sampling in the progression.
void BM_prime_scan(benchmark::State& state) {
    oatk::PrimeSearchConfig cfg;
    cfg.modulus = static_cast<std::uint64_t>(state.range(0));
    cfg.min_exclusive = cfg.modulus;
    for (auto _ : state) benchmark::DoNotOptimize(oatk::find_prime_in_progression(cfg));
}
BENCHMARK(BM_prime_scan)->Arg(6)->Arg(210)->Arg(2310)->Arg(30030);

void BM_prime_sample(benchmark::State& state) {
    oatk::PrimeSearchConfig cfg;
    cfg.modulus = static_cast<std::uint64_t>(state.range(0));
    cfg.min_exclusive = cfg.modulus;
    cfg.mode = oatk::PrimeSearchConfig::Mode::Sample;
    cfg.seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(oatk::find_prime_in_progression(cfg));
}
BENCHMARK(BM_prime_sample)->Arg(6)->Arg(210)->Arg(2310)->Arg(30030);

// Exhaustive strength verification over all t-subsets.
void BM_verify(benchmark::State& state) {
    const oatk::OrthogonalArray a = oatk::build_oa(oatk::plan_rs(2, 4, 2));
    oatk::VerifyOptions opts;
    for (auto _ : state) {
        const oatk::VerifyReport r = oatk::verify_oa(a, 2, opts);
        benchmark::DoNotOptimize(r.worst_dev);
    }
}
BENCHMARK(BM_verify);

} // namespace

BENCHMARK_MAIN();
