#include "aiskit/encodings.hpp"

#include <cmath>
#include <sstream>

#include "aiskit/errors.hpp"
#include "aiskit/format.hpp"

namespace aiskit {

BitPattern::BitPattern(std::string_view text) {
    if (text.empty()) {
        throw ConfigError("bit pattern must have length >= 1");
    }
    bits_.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ParseError("bit pattern may contain only '0' and '1', got '" +
                             std::string(text) + "'");
        }
        bits_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
}

BitPattern::BitPattern(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) {
        throw ConfigError("bit pattern must have length >= 1");
    }
    for (std::uint8_t b : bits_) {
        if (b > 1) {
            throw ConfigError("bit pattern entries must be 0 or 1");
        }
    }
}

BitPattern BitPattern::random(std::size_t length, Rng& rng) {
    if (length == 0) {
        throw ConfigError("bit pattern must have length >= 1");
    }
    std::vector<std::uint8_t> bits(length);
    for (auto& b : bits) {
        b = static_cast<std::uint8_t>(rng.below(2));
    }
    return BitPattern(std::move(bits));
}

std::string BitPattern::to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (std::uint8_t b : bits_) {
        out.push_back(static_cast<char>('0' + b));
    }
    return out;
}

FeatureVector::FeatureVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw ConfigError("feature vector must have length >= 1");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw ConfigError("feature vector values must be finite");
        }
    }
}

void VoteProfile::add_vote(ItemId item, int score) {
    if (!range_.contains(score)) {
        throw ConfigError("vote " + std::to_string(score) + " outside score range [" +
                          std::to_string(range_.min) + ", " + std::to_string(range_.max) +
                          "]");
    }
    auto [it, inserted] = votes_.emplace(item, score);
    (void)it;
    if (!inserted) {
        throw ConfigError("duplicate vote for item " + std::to_string(item));
    }
}

std::optional<int> VoteProfile::vote_for(ItemId item) const {
    auto it = votes_.find(item);
    if (it == votes_.end()) {
        return std::nullopt;
    }
    return it->second;
}

double VoteProfile::mean() const {
    if (votes_.empty()) {
        throw NoDataError("mean of an empty vote profile");
    }
    double sum = 0.0;
    for (const auto& [item, score] : votes_) {
        (void)item;
        sum += score;
    }
    return sum / static_cast<double>(votes_.size());
}

std::string_view protocol_name(Protocol p) {
    switch (p) {
        case Protocol::tcp: return "tcp";
        case Protocol::udp: return "udp";
        case Protocol::icmp: return "icmp";
        case Protocol::any: return "any";
    }
    throw ConfigError("unknown protocol value");
}

Protocol parse_protocol(std::string_view name) {
    if (name == "tcp") return Protocol::tcp;
    if (name == "udp") return Protocol::udp;
    if (name == "icmp") return Protocol::icmp;
    if (name == "any" || name == "*") return Protocol::any;
    throw ParseError("unknown protocol '" + std::string(name) + "'");
}

bool PacketSignature::is_concrete() const {
    return protocol != Protocol::any && src_ip && src_port && dst_ip && dst_port;
}

namespace {

std::string field_or_wildcard(const std::optional<std::uint32_t>& ip) {
    return ip ? format_ipv4(*ip) : "*";
}

std::string field_or_wildcard(const std::optional<std::uint16_t>& port) {
    return port ? std::to_string(*port) : "*";
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

std::string PacketSignature::to_string() const {
    std::string out(protocol == Protocol::any ? "*" : protocol_name(protocol));
    out += ',';
    out += field_or_wildcard(src_ip);
    out += ',';
    out += field_or_wildcard(src_port);
    out += ',';
    out += field_or_wildcard(dst_ip);
    out += ',';
    out += field_or_wildcard(dst_port);
    return out;
}

PacketSignature PacketSignature::parse(std::string_view text) {
    auto fields = split(text, ',');
    if (fields.size() != 5) {
        throw ParseError("packet signature needs 5 comma-separated fields, got '" +
                         std::string(text) + "'");
    }
    PacketSignature sig;
    sig.protocol = parse_protocol(trim(fields[0]));
    auto parse_ip = [](std::string_view f) -> std::optional<std::uint32_t> {
        f = trim(f);
        if (f == "*") return std::nullopt;
        return parse_ipv4(f);
    };
    auto parse_port = [](std::string_view f) -> std::optional<std::uint16_t> {
        f = trim(f);
        if (f == "*") return std::nullopt;
        std::uint64_t value = parse_u64(f, "port");
        if (value > 65535) {
            throw ParseError("port " + std::string(f) + " out of range [0, 65535]");
        }
        return static_cast<std::uint16_t>(value);
    };
    sig.src_ip = parse_ip(fields[1]);
    sig.src_port = parse_port(fields[2]);
    sig.dst_ip = parse_ip(fields[3]);
    sig.dst_port = parse_port(fields[4]);
    return sig;
}

std::string format_ipv4(std::uint32_t ip) {
    std::string out = std::to_string((ip >> 24) & 0xff);
    out += '.';
    out += std::to_string((ip >> 16) & 0xff);
    out += '.';
    out += std::to_string((ip >> 8) & 0xff);
    out += '.';
    out += std::to_string(ip & 0xff);
    return out;
}

std::uint32_t parse_ipv4(std::string_view text) {
    auto octets = split(text, '.');
    if (octets.size() != 4) {
        throw ParseError("IPv4 address needs 4 octets, got '" + std::string(text) + "'");
    }
    std::uint32_t ip = 0;
    for (auto octet : octets) {
        std::uint64_t value = parse_u64(trim(octet), "IPv4 octet");
        if (value > 255) {
            throw ParseError("IPv4 octet " + std::string(octet) + " out of range [0, 255]");
        }
        ip = (ip << 8) | static_cast<std::uint32_t>(value);
    }
    return ip;
}

}  // namespace aiskit
