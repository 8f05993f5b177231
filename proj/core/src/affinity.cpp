#include "aiskit/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aiskit/errors.hpp"

namespace aiskit {

std::string_view measure_name(Measure m) {
    switch (m) {
        case Measure::hamming: return "hamming";
        case Measure::contiguous: return "contiguous";
        case Measure::euclidean: return "euclidean";
        case Measure::pearson: return "pearson";
    }
    throw ConfigError("unknown measure value");
}

Measure parse_measure(std::string_view name) {
    if (name == "hamming") return Measure::hamming;
    if (name == "contiguous") return Measure::contiguous;
    if (name == "euclidean") return Measure::euclidean;
    if (name == "pearson") return Measure::pearson;
    throw ParseError("unknown measure '" + std::string(name) + "'");
}

void AffinityConfig::validate() const {
    if (pearson_overlap_threshold < 1) {
        throw ConfigError("pearson_overlap_threshold must be positive");
    }
    if (contiguous_r < 1) {
        throw ConfigError("contiguous_r must be positive");
    }
}

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": lengths differ (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

int hamming_similarity(const BitPattern& a, const BitPattern& b) {
    require_same_length(a.size(), b.size(), "hamming_similarity");
    int score = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        score += (a[i] == b[i]);
    }
    return score;
}

int longest_contiguous_match(const BitPattern& a, const BitPattern& b) {
    require_same_length(a.size(), b.size(), "longest_contiguous_match");
    int best = 0;
    int run = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) {
            ++run;
            best = std::max(best, run);
        } else {
            run = 0;
        }
    }
    return best;
}

bool r_contiguous_match(const BitPattern& a, const BitPattern& b, int r) {
    if (r < 1 || static_cast<std::size_t>(r) > a.size()) {
        throw ConfigError("r must satisfy 1 <= r <= L, got r=" + std::to_string(r) +
                          " for L=" + std::to_string(a.size()));
    }
    return longest_contiguous_match(a, b) >= r;
}

double euclidean_distance(const FeatureVector& a, const FeatureVector& b) {
    require_same_length(a.size(), b.size(), "euclidean_distance");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double apply_overlap_penalty(double r, int overlap, int threshold) {
    if (threshold < 1) {
        throw ConfigError("pearson_overlap_threshold must be positive");
    }
    if (overlap >= threshold) {
        return r;
    }
    return r * (static_cast<double>(overlap) / static_cast<double>(threshold));
}

PearsonResult pearson(const VoteProfile& u, const VoteProfile& v, const AffinityConfig& cfg) {
    cfg.validate();

    // Walk the overlap; both maps iterate in ascending item order.
    std::vector<std::pair<int, int>> overlap;
    auto iu = u.votes().begin();
    auto iv = v.votes().begin();
    while (iu != u.votes().end() && iv != v.votes().end()) {
        if (iu->first < iv->first) {
            ++iu;
        } else if (iv->first < iu->first) {
            ++iv;
        } else {
            overlap.emplace_back(iu->second, iv->second);
            ++iu;
            ++iv;
        }
    }
    const int n = static_cast<int>(overlap.size());
    if (n == 0) {
        throw NoOverlapError("users share no voted items");
    }

    // Means over ALL votes of each user, not just the overlap.
    const double mean_u = u.mean();
    const double mean_v = v.mean();

    double numerator = 0.0;
    double su2 = 0.0;
    double sv2 = 0.0;
    for (const auto& [vote_u, vote_v] : overlap) {
        const double du = static_cast<double>(vote_u) - mean_u;
        const double dv = static_cast<double>(vote_v) - mean_v;
        numerator += du * dv;
        su2 += du * du;
        sv2 += dv * dv;
    }

    if (su2 == 0.0 || sv2 == 0.0) {
        return {0.0, n, true};
    }

    double r = numerator / std::sqrt(su2 * sv2);
    r = apply_overlap_penalty(r, n, cfg.pearson_overlap_threshold);
    r = std::clamp(r, -1.0, 1.0);
    return {r, n, false};
}

bool packet_match(const PacketSignature& detector, const PacketSignature& packet) {
    if (!packet.is_concrete()) {
        throw InvalidObservationError("observed packet contains wildcards: " +
                                      packet.to_string());
    }
    if (detector.protocol != Protocol::any && detector.protocol != packet.protocol) {
        return false;
    }
    if (detector.src_ip && *detector.src_ip != *packet.src_ip) {
        return false;
    }
    if (detector.src_port && *detector.src_port != *packet.src_port) {
        return false;
    }
    if (detector.dst_ip && *detector.dst_ip != *packet.dst_ip) {
        return false;
    }
    if (detector.dst_port && *detector.dst_port != *packet.dst_port) {
        return false;
    }
    return true;
}

}  // namespace aiskit
