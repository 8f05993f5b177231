#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aiskit/rng.hpp"

namespace aiskit {

using ItemId = std::uint64_t;

/// Fixed-length string of binary symbols, compared positionally. Immutable
/// after construction; mutation operators build new patterns.
class BitPattern {
public:
    /// Parses a string of '0'/'1' characters, e.g. "10010".
    explicit BitPattern(std::string_view text);

    /// Takes ownership of a vector whose entries must all be 0 or 1.
    explicit BitPattern(std::vector<std::uint8_t> bits);

    static BitPattern random(std::size_t length, Rng& rng);

    std::size_t size() const { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    std::string to_string() const;

    bool operator==(const BitPattern&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Ordered sequence of finite reals.
class FeatureVector {
public:
    explicit FeatureVector(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    bool operator==(const FeatureVector&) const = default;

private:
    std::vector<double> values_;
};

/// Inclusive score range for votes.
struct ScoreRange {
    int min = 0;
    int max = 5;

    bool contains(int score) const { return score >= min && score <= max; }
};

/// Sparse item -> score mapping for one user. Each item appears at most
/// once; iteration order is ascending item id, which keeps every derived
/// computation deterministic.
class VoteProfile {
public:
    explicit VoteProfile(ScoreRange range = {}) : range_(range) {}

    /// Throws ConfigError on a duplicate item or an out-of-range score.
    void add_vote(ItemId item, int score);

    std::optional<int> vote_for(ItemId item) const;
    const std::map<ItemId, int>& votes() const { return votes_; }
    std::size_t size() const { return votes_.size(); }
    bool empty() const { return votes_.empty(); }
    ScoreRange range() const { return range_; }

    /// Mean over all of this user's votes. Throws NoDataError when empty.
    double mean() const;

    bool operator==(const VoteProfile& other) const { return votes_ == other.votes_; }

private:
    std::map<ItemId, int> votes_;
    ScoreRange range_;
};

enum class Protocol : std::uint8_t { tcp, udp, icmp, any };

std::string_view protocol_name(Protocol p);
Protocol parse_protocol(std::string_view name);

/// Five-field packet template: protocol, source ip/port, destination
/// ip/port. A disengaged ip or port is a wildcard; Protocol::any is the
/// protocol wildcard. IPs are stored as host-order u32 (a.b.c.d ->
/// a<<24 | b<<16 | c<<8 | d).
struct PacketSignature {
    Protocol protocol = Protocol::any;
    std::optional<std::uint32_t> src_ip;
    std::optional<std::uint16_t> src_port;
    std::optional<std::uint32_t> dst_ip;
    std::optional<std::uint16_t> dst_port;

    bool is_concrete() const;

    /// Comma-separated field list with '*' for wildcards, e.g.
    /// "tcp,10.0.0.1,*,10.0.0.2,25".
    std::string to_string() const;
    static PacketSignature parse(std::string_view text);

    bool operator==(const PacketSignature&) const = default;
};

std::string format_ipv4(std::uint32_t ip);
std::uint32_t parse_ipv4(std::string_view text);

}  // namespace aiskit
