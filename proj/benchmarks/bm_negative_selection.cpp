#include <benchmark/benchmark.h>

#include "aiskit/negative_selection.hpp"
#include "aiskit/rng.hpp"

using namespace aiskit;

namespace {

SelfSet random_self(std::size_t count, std::size_t length, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<BitPattern> items;
    items.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        items.push_back(BitPattern::random(length, rng));
    }
    return SelfSet::from_bits(std::move(items));
}

void bm_generate_detectors(benchmark::State& state) {
    const auto self = random_self(static_cast<std::size_t>(state.range(0)), 98, 7);
    GenerationConfig cfg;
    cfg.target_count = 16;
    cfg.max_candidates = 1 << 20;
    cfg.rng_seed = 11;
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate_detectors(self, cfg, 12));
    }
}
BENCHMARK(bm_generate_detectors)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void bm_monitor(benchmark::State& state) {
    const auto self = random_self(64, 98, 7);
    GenerationConfig cfg;
    cfg.target_count = 32;
    cfg.max_candidates = 1 << 20;
    cfg.rng_seed = 13;
    const DetectorSet detectors = generate_detectors(self, cfg, 12);

    Rng rng(17);
    std::vector<BitPattern> stream;
    stream.reserve(static_cast<std::size_t>(state.range(0)));
    for (int i = 0; i < state.range(0); ++i) {
        stream.push_back(BitPattern::random(98, rng));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(monitor(detectors, stream));
    }
}
BENCHMARK(bm_monitor)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
