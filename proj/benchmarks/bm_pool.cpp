#include <benchmark/benchmark.h>

#include "aiskit/immune_pool.hpp"
#include "aiskit/recommender.hpp"
#include "aiskit/synth.hpp"

using namespace aiskit;

namespace {

void bm_run_to_stability(benchmark::State& state) {
    Rng rng(23);
    std::vector<PoolCandidate> stream;
    for (std::int64_t id = 0; id < state.range(0); ++id) {
        const double m = (id % 11 == 3) ? 0.95 + 0.05 * rng.unit() : 0.5 * rng.unit();
        stream.push_back({Antibody{BitPattern{"1"}, 0.0, static_cast<std::uint64_t>(id)}, {m}});
    }
    const AntigenSet antigens({Antigen{BitPattern{"1"}, 1.0}});
    PoolConfig cfg;
    cfg.capacity = 10;
    cfg.k2 = 0.7;
    cfg.k3 = 0.65;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_to_stability(stream, antigens, cfg));
    }
}
BENCHMARK(bm_run_to_stability)->Arg(50)->Arg(500)->Unit(benchmark::kMicrosecond);

void bm_build_neighborhood(benchmark::State& state) {
    RatingsSynthConfig synth;
    synth.users = static_cast<std::size_t>(state.range(0));
    synth.items = 40;
    synth.clones = 8;
    synth.target = 0;
    synth.noise = 0.05;
    synth.seed = 29;
    const RatingsDataset dataset = synth_ratings(synth);
    PoolConfig pool;
    pool.capacity = 10;
    pool.k2 = 0.7;
    pool.k3 = 0.65;
    const AffinityConfig affinity;
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_neighborhood(0, dataset, pool, affinity));
    }
}
BENCHMARK(bm_build_neighborhood)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
