#pragma once

#include <cstdint>

#include "aiskit/ids.hpp"
#include "aiskit/recommender.hpp"

namespace aiskit {

/// Planted-neighborhood ratings generator: every user votes on every item;
/// `clones` users copy the target's profile with an independent per-item
/// flip probability, the rest vote uniformly at random.
struct RatingsSynthConfig {
    std::size_t users = 20;
    std::size_t items = 20;
    std::size_t clones = 5;
    UserId target = 0;
    double noise = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

RatingsDataset synth_ratings(const RatingsSynthConfig& cfg);

/// Labeled packet log generator: self records drawn from a small fixed
/// trusted-network pool (10.0.0.0/24, a handful of service ports), followed
/// by anomalies drawn from outside that pool. No anomaly collides with a
/// possible self record.
struct PacketSynthConfig {
    std::size_t self_count = 100;
    std::size_t anomaly_count = 10;
    std::uint64_t seed = 0;

    void validate() const;
};

PacketLog synth_packets(const PacketSynthConfig& cfg);

}  // namespace aiskit
