#include "aiskit/rng.hpp"

#include "aiskit/errors.hpp"

namespace aiskit {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) {
        throw ConfigError("Rng::below requires a positive bound");
    }
    // Rejection sampling keeps the draw unbiased for any bound.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t value;
    do {
        value = next_u64();
    } while (value >= limit);
    return value % bound;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
    std::uint64_t state = master ^ fnv1a64(tag);
    splitmix64(state);
    return splitmix64(state);
}

}  // namespace aiskit
