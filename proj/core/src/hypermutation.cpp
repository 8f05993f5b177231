#include "aiskit/hypermutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "aiskit/errors.hpp"

namespace aiskit {

std::string_view mutation_direction_name(MutationDirection d) {
    switch (d) {
        case MutationDirection::proportional_to_affinity: return "proportional";
        case MutationDirection::inverse_to_affinity: return "inverse";
    }
    throw ConfigError("unknown mutation direction value");
}

MutationDirection parse_mutation_direction(std::string_view name) {
    if (name == "proportional") return MutationDirection::proportional_to_affinity;
    if (name == "inverse") return MutationDirection::inverse_to_affinity;
    throw ParseError("unknown mutation direction '" + std::string(name) + "'");
}

void MutationConfig::validate() const {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw ConfigError("mutation rate must be positive");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ConfigError("mutation sigma must be positive");
    }
    if (!(sigma_floor > 0.0) || !std::isfinite(sigma_floor)) {
        throw ConfigError("mutation sigma_floor must be positive");
    }
    if (packet_wildcard_prob < 0.0 || packet_wildcard_prob > 1.0) {
        throw ConfigError("packet_wildcard_prob must lie in [0, 1]");
    }
}

namespace {

double mutation_strength(double affinity, const MutationConfig& cfg) {
    if (affinity < 0.0 || affinity > 1.0) {
        throw ConfigError("affinity must lie in [0, 1], got " + std::to_string(affinity));
    }
    return cfg.direction == MutationDirection::proportional_to_affinity ? affinity
                                                                        : 1.0 - affinity;
}

std::size_t change_count(double strength, double rate, std::size_t positions) {
    const long raw = std::lround(rate * static_cast<double>(positions) * strength);
    // At least one change is always made.
    return static_cast<std::size_t>(
        std::clamp(raw, 1L, static_cast<long>(positions)));
}

/// First k entries of a partial Fisher-Yates shuffle of 0..n-1.
std::vector<std::size_t> sample_positions(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace

BitPattern hypermutate(const BitPattern& pattern, double affinity, const MutationConfig& cfg,
                       Rng& rng) {
    cfg.validate();
    const double strength = mutation_strength(affinity, cfg);
    const std::size_t flips = change_count(strength, cfg.rate, pattern.size());
    std::vector<std::uint8_t> bits = pattern.bits();
    for (std::size_t pos : sample_positions(bits.size(), flips, rng)) {
        bits[pos] ^= 1;
    }
    return BitPattern(std::move(bits));
}

FeatureVector hypermutate(const FeatureVector& vec, double affinity, const MutationConfig& cfg,
                          Rng& rng) {
    cfg.validate();
    const double strength = mutation_strength(affinity, cfg);
    const double magnitude = std::max(cfg.sigma_floor, cfg.sigma * strength);
    std::vector<double> values = vec.values();
    const std::size_t pos = rng.below(values.size());
    values[pos] += rng.coin() ? magnitude : -magnitude;
    return FeatureVector(std::move(values));
}

PacketSignature random_packet_signature(double wildcard_prob, Rng& rng) {
    auto draw_ip = [&]() -> std::optional<std::uint32_t> {
        if (rng.unit() < wildcard_prob) return std::nullopt;
        return static_cast<std::uint32_t>(rng.below(1ULL << 32));
    };
    auto draw_port = [&]() -> std::optional<std::uint16_t> {
        if (rng.unit() < wildcard_prob) return std::nullopt;
        return static_cast<std::uint16_t>(rng.below(65536));
    };
    PacketSignature sig;
    sig.protocol = static_cast<Protocol>(rng.below(4));
    sig.src_ip = draw_ip();
    sig.src_port = draw_port();
    sig.dst_ip = draw_ip();
    sig.dst_port = draw_port();
    return sig;
}

namespace {

// Re-draws a field until it differs from its old value. A wildcard field can
// only change by turning concrete, so the wildcard branch is skipped then.
template <typename T, std::uint64_t Range>
void mutate_optional_field(std::optional<T>& field, double wildcard_prob, Rng& rng) {
    const std::optional<T> old = field;
    do {
        if (old.has_value() && rng.unit() < wildcard_prob) {
            field = std::nullopt;
        } else {
            field = static_cast<T>(rng.below(Range));
        }
    } while (field == old);
}

}  // namespace

PacketSignature hypermutate(const PacketSignature& sig, double affinity,
                            const MutationConfig& cfg, Rng& rng) {
    cfg.validate();
    const double strength = mutation_strength(affinity, cfg);
    const std::size_t changes = change_count(strength, cfg.rate, 5);
    PacketSignature out = sig;
    for (std::size_t field : sample_positions(5, changes, rng)) {
        switch (field) {
            case 0: {
                Protocol next;
                do {
                    next = static_cast<Protocol>(rng.below(4));
                } while (next == out.protocol);
                out.protocol = next;
                break;
            }
            case 1:
                mutate_optional_field<std::uint32_t, (1ULL << 32)>(
                    out.src_ip, cfg.packet_wildcard_prob, rng);
                break;
            case 2:
                mutate_optional_field<std::uint16_t, 65536>(out.src_port,
                                                            cfg.packet_wildcard_prob, rng);
                break;
            case 3:
                mutate_optional_field<std::uint32_t, (1ULL << 32)>(
                    out.dst_ip, cfg.packet_wildcard_prob, rng);
                break;
            case 4:
                mutate_optional_field<std::uint16_t, 65536>(out.dst_port,
                                                            cfg.packet_wildcard_prob, rng);
                break;
        }
    }
    return out;
}

}  // namespace aiskit
