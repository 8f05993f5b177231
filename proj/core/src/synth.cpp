#include "aiskit/synth.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "aiskit/errors.hpp"
#include "aiskit/rng.hpp"

namespace aiskit {

void RatingsSynthConfig::validate() const {
    if (users < 2) {
        throw ConfigError("ratings synthesis needs at least 2 users");
    }
    if (items < 2) {
        throw ConfigError("ratings synthesis needs at least 2 items");
    }
    if (target >= users) {
        throw ConfigError("target user id must be below the user count");
    }
    if (clones > users - 1) {
        throw ConfigError("clone count must leave room for the target");
    }
    if (noise < 0.0 || noise > 1.0) {
        throw ConfigError("noise must lie in [0, 1]");
    }
}

RatingsDataset synth_ratings(const RatingsSynthConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);

    // Target profile first, so its stream position is independent of the
    // clone placement.
    std::vector<int> target_votes(cfg.items);
    for (auto& vote : target_votes) {
        vote = static_cast<int>(rng.below(6));
    }

    // Clone ids drawn without replacement from the non-target users.
    std::vector<UserId> others;
    others.reserve(cfg.users - 1);
    for (UserId user = 0; user < cfg.users; ++user) {
        if (user != cfg.target) {
            others.push_back(user);
        }
    }
    for (std::size_t i = 0; i < cfg.clones; ++i) {
        const std::size_t j = i + rng.below(others.size() - i);
        std::swap(others[i], others[j]);
    }
    std::vector<bool> is_clone(cfg.users, false);
    for (std::size_t i = 0; i < cfg.clones; ++i) {
        is_clone[others[i]] = true;
    }

    RatingsDataset dataset;
    for (UserId user = 0; user < cfg.users; ++user) {
        for (ItemId item = 0; item < cfg.items; ++item) {
            int vote;
            if (user == cfg.target) {
                vote = target_votes[item];
            } else if (is_clone[user]) {
                vote = target_votes[item];
                if (cfg.noise > 0.0 && rng.unit() < cfg.noise) {
                    // Flip to a uniformly chosen *different* score.
                    const int shifted = static_cast<int>(rng.below(5));
                    vote = shifted >= vote ? shifted + 1 : shifted;
                }
            } else {
                vote = static_cast<int>(rng.below(6));
            }
            dataset.add_vote(user, item, vote);
        }
    }
    return dataset;
}

void PacketSynthConfig::validate() const {
    if (self_count == 0) {
        throw ConfigError("packet synthesis needs at least one self record");
    }
}

namespace {

constexpr std::uint32_t kTrustedNet = 0x0a000000;  // 10.0.0.0/24
constexpr std::array<std::uint16_t, 6> kServicePorts = {22, 25, 53, 80, 443, 8080};

PacketSignature draw_self_packet(Rng& rng) {
    PacketSignature packet;
    packet.protocol = rng.below(2) == 0 ? Protocol::tcp : Protocol::udp;
    packet.src_ip = kTrustedNet | static_cast<std::uint32_t>(1 + rng.below(8));
    packet.src_port = static_cast<std::uint16_t>(1024 + rng.below(16));
    packet.dst_ip = kTrustedNet | static_cast<std::uint32_t>(1 + rng.below(8));
    packet.dst_port = kServicePorts[rng.below(kServicePorts.size())];
    return packet;
}

bool inside_trusted_net(std::uint32_t ip) {
    return (ip & 0xffffff00) == kTrustedNet;
}

PacketSignature draw_anomaly_packet(Rng& rng) {
    PacketSignature packet;
    packet.protocol = static_cast<Protocol>(rng.below(3));
    auto draw_outside_ip = [&] {
        std::uint32_t ip;
        do {
            ip = static_cast<std::uint32_t>(rng.below(1ULL << 32));
        } while (inside_trusted_net(ip));
        return ip;
    };
    packet.src_ip = draw_outside_ip();
    packet.src_port = static_cast<std::uint16_t>(rng.below(65536));
    packet.dst_ip = draw_outside_ip();
    packet.dst_port = static_cast<std::uint16_t>(rng.below(65536));
    return packet;
}

}  // namespace

PacketLog synth_packets(const PacketSynthConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    std::vector<PacketRecord> records;
    records.reserve(cfg.self_count + cfg.anomaly_count);
    for (std::size_t i = 0; i < cfg.self_count; ++i) {
        records.push_back({draw_self_packet(rng), true});
    }
    // Anomaly ips fall outside the trusted /24, so no anomaly can equal a
    // self record and labels stay truthful.
    for (std::size_t i = 0; i < cfg.anomaly_count; ++i) {
        records.push_back({draw_anomaly_packet(rng), false});
    }
    return PacketLog(std::move(records));
}

}  // namespace aiskit
