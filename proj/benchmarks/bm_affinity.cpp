#include <benchmark/benchmark.h>

#include "aiskit/affinity.hpp"
#include "aiskit/rng.hpp"

using namespace aiskit;

namespace {

std::vector<BitPattern> random_patterns(std::size_t count, std::size_t length,
                                        std::uint64_t seed) {
    Rng rng(seed);
    std::vector<BitPattern> patterns;
    patterns.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        patterns.push_back(BitPattern::random(length, rng));
    }
    return patterns;
}

void bm_hamming_similarity(benchmark::State& state) {
    const auto patterns = random_patterns(64, static_cast<std::size_t>(state.range(0)), 1);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& a = patterns[i % patterns.size()];
        const auto& b = patterns[(i + 1) % patterns.size()];
        benchmark::DoNotOptimize(hamming_similarity(a, b));
        ++i;
    }
}
BENCHMARK(bm_hamming_similarity)->Arg(8)->Arg(98)->Arg(1024);

void bm_longest_contiguous(benchmark::State& state) {
    const auto patterns = random_patterns(64, static_cast<std::size_t>(state.range(0)), 2);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& a = patterns[i % patterns.size()];
        const auto& b = patterns[(i + 1) % patterns.size()];
        benchmark::DoNotOptimize(longest_contiguous_match(a, b));
        ++i;
    }
}
BENCHMARK(bm_longest_contiguous)->Arg(8)->Arg(98)->Arg(1024);

void bm_pearson(benchmark::State& state) {
    Rng rng(3);
    const std::size_t items = static_cast<std::size_t>(state.range(0));
    VoteProfile u, v;
    for (ItemId item = 0; item < items; ++item) {
        u.add_vote(item, static_cast<int>(rng.below(6)));
        v.add_vote(item, static_cast<int>(rng.below(6)));
    }
    AffinityConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pearson(u, v, cfg));
    }
}
BENCHMARK(bm_pearson)->Arg(20)->Arg(200)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
