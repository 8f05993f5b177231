#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace aiskit {

/// Deterministic random source used by every stochastic operation.
///
/// The engine is std::mt19937_64, whose output sequence for a given seed is
/// pinned by the standard, so streams are reproducible across platforms and
/// compilers. Bounded and real draws are implemented here rather than with
/// the standard distribution templates, whose algorithms are
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool coin() { return (next_u64() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

/// Derives a component seed from a master seed and a component tag.
/// Distinct tags yield independent streams, so routing a new component off
/// the same master seed never perturbs existing ones.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);

}  // namespace aiskit
