#include "aiskit/negative_selection.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "aiskit/errors.hpp"
#include "aiskit/format.hpp"

namespace aiskit {

SelfSet SelfSet::from_bits(std::vector<BitPattern> items) {
    if (items.empty()) {
        throw EmptySelfError("self set must be non-empty");
    }
    const std::size_t length = items.front().size();
    for (const auto& p : items) {
        if (p.size() != length) {
            throw DimensionError("self set bit patterns must share one length");
        }
    }
    SelfSet self;
    self.shape_ = ShapeKind::bits;
    self.bits_ = std::move(items);
    return self;
}

SelfSet SelfSet::from_packets(std::vector<PacketSignature> items) {
    if (items.empty()) {
        throw EmptySelfError("self set must be non-empty");
    }
    for (const auto& p : items) {
        if (!p.is_concrete()) {
            throw InvalidObservationError("self set packets must be concrete: " +
                                          p.to_string());
        }
    }
    SelfSet self;
    self.shape_ = ShapeKind::packet;
    self.packets_ = std::move(items);
    return self;
}

std::size_t SelfSet::size() const {
    return shape_ == ShapeKind::bits ? bits_.size() : packets_.size();
}

std::size_t SelfSet::bit_length() const {
    if (shape_ != ShapeKind::bits) {
        throw DimensionError("bit_length is defined only for the bits shape");
    }
    return bits_.front().size();
}

const std::vector<BitPattern>& SelfSet::bit_items() const {
    if (shape_ != ShapeKind::bits) {
        throw DimensionError("self set holds packet signatures, not bit patterns");
    }
    return bits_;
}

const std::vector<PacketSignature>& SelfSet::packet_items() const {
    if (shape_ != ShapeKind::packet) {
        throw DimensionError("self set holds bit patterns, not packet signatures");
    }
    return packets_;
}

void GenerationConfig::validate() const {
    if (target_count == 0) {
        throw ConfigError("target_count must be positive");
    }
    if (max_candidates < target_count) {
        throw ConfigError("max_candidates must be >= target_count");
    }
    if (max_mutation_retries < 1) {
        throw ConfigError("max_mutation_retries must be positive");
    }
    if (packet_wildcard_prob < 0.0 || packet_wildcard_prob > 1.0) {
        throw ConfigError("packet_wildcard_prob must lie in [0, 1]");
    }
    mutation.validate();
}

DetectorSet::DetectorSet(std::vector<BitPattern> detectors, int match_threshold_r,
                         GenerationStats stats)
    : shape_(ShapeKind::bits),
      bits_(std::move(detectors)),
      match_threshold_r_(match_threshold_r),
      stats_(stats) {
    if (!bits_.empty()) {
        const std::size_t length = bits_.front().size();
        for (const auto& d : bits_) {
            if (d.size() != length) {
                throw DimensionError("detectors must share one length");
            }
        }
        if (match_threshold_r_ < 1 || static_cast<std::size_t>(match_threshold_r_) > length) {
            throw ConfigError("match threshold r must satisfy 1 <= r <= L");
        }
    }
}

DetectorSet::DetectorSet(std::vector<PacketSignature> detectors, GenerationStats stats)
    : shape_(ShapeKind::packet), packets_(std::move(detectors)), stats_(stats) {}

std::size_t DetectorSet::size() const {
    return shape_ == ShapeKind::bits ? bits_.size() : packets_.size();
}

const std::vector<BitPattern>& DetectorSet::bit_detectors() const {
    if (shape_ != ShapeKind::bits) {
        throw DimensionError("detector set holds packet signatures, not bit patterns");
    }
    return bits_;
}

const std::vector<PacketSignature>& DetectorSet::packet_detectors() const {
    if (shape_ != ShapeKind::packet) {
        throw DimensionError("detector set holds bit patterns, not packet signatures");
    }
    return packets_;
}

std::size_t DetectorSet::bit_length() const {
    if (shape_ != ShapeKind::bits || bits_.empty()) {
        return 0;
    }
    return bits_.front().size();
}

void DetectorSet::save(std::ostream& out) const {
    out << "shape=" << (shape_ == ShapeKind::bits ? "bits" : "packet")
        << " L=" << bit_length() << " r=" << match_threshold_r_ << "\n";
    if (shape_ == ShapeKind::bits) {
        for (const auto& d : bits_) {
            out << d.to_string() << "\n";
        }
    } else {
        for (const auto& d : packets_) {
            out << d.to_string() << "\n";
        }
    }
}

void DetectorSet::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    save(out);
    if (!out) {
        throw IoError("failed writing detector set to '" + path + "'");
    }
}

DetectorSet DetectorSet::load(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw ParseError("detector file is empty");
    }
    std::string shape_value;
    std::size_t length = 0;
    int r = 0;
    std::istringstream tokens(header);
    std::string token;
    bool have_shape = false, have_l = false, have_r = false;
    while (tokens >> token) {
        if (token.starts_with("shape=")) {
            shape_value = token.substr(6);
            have_shape = true;
        } else if (token.starts_with("L=")) {
            length = parse_u64(token.substr(2), "detector header L");
            have_l = true;
        } else if (token.starts_with("r=")) {
            r = parse_int(token.substr(2), "detector header r");
            have_r = true;
        } else {
            throw ParseError("unexpected detector header token '" + token + "'");
        }
    }
    if (!have_shape || !have_l || !have_r) {
        throw ParseError("detector header must carry shape=, L= and r=");
    }

    std::string line;
    std::size_t line_no = 1;
    if (shape_value == "bits") {
        std::vector<BitPattern> detectors;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) {
                continue;
            }
            BitPattern p{std::string_view(line)};
            if (p.size() != length) {
                throw ParseError("line " + std::to_string(line_no) + ": detector length " +
                                 std::to_string(p.size()) + " differs from header L=" +
                                 std::to_string(length));
            }
            detectors.push_back(std::move(p));
        }
        return DetectorSet(std::move(detectors), r, GenerationStats{});
    }
    if (shape_value == "packet") {
        std::vector<PacketSignature> detectors;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) {
                continue;
            }
            detectors.push_back(PacketSignature::parse(line));
        }
        return DetectorSet(std::move(detectors), GenerationStats{});
    }
    throw ParseError("unknown detector shape '" + shape_value + "'");
}

DetectorSet DetectorSet::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    return load(in);
}

CensorDecision censor(const BitPattern& candidate, const SelfSet& self, int r) {
    for (const auto& s : self.bit_items()) {
        if (r_contiguous_match(candidate, s, r)) {
            return CensorDecision::eliminate;
        }
    }
    return CensorDecision::keep;
}

CensorDecision censor(const PacketSignature& candidate, const SelfSet& self) {
    for (const auto& s : self.packet_items()) {
        if (packet_match(candidate, s)) {
            return CensorDecision::eliminate;
        }
    }
    return CensorDecision::keep;
}

double self_match_affinity(const BitPattern& candidate, const SelfSet& self) {
    int best = 0;
    for (const auto& s : self.bit_items()) {
        best = std::max(best, longest_contiguous_match(candidate, s));
    }
    return static_cast<double>(best) / static_cast<double>(candidate.size());
}

double self_match_affinity(const PacketSignature& candidate, const SelfSet& self) {
    int best = 0;
    for (const auto& s : self.packet_items()) {
        int fields = 0;
        fields += (candidate.protocol == Protocol::any || candidate.protocol == s.protocol);
        fields += (!candidate.src_ip || *candidate.src_ip == *s.src_ip);
        fields += (!candidate.src_port || *candidate.src_port == *s.src_port);
        fields += (!candidate.dst_ip || *candidate.dst_ip == *s.dst_ip);
        fields += (!candidate.dst_port || *candidate.dst_port == *s.dst_port);
        best = std::max(best, fields);
    }
    return static_cast<double>(best) / 5.0;
}

namespace {

// Shared generation loop over either shape. Draw draws a fresh candidate,
// Censor tests it, Affinity scores its self match for mutation strength,
// Mutate produces the next retry.
template <typename Item, typename Draw, typename Censor, typename Affinity, typename Mutate>
std::vector<Item> generate_loop(const GenerationConfig& cfg, GenerationStats& stats,
                                Draw&& draw, Censor&& censor_fn, Affinity&& affinity_fn,
                                Mutate&& mutate_fn) {
    std::vector<Item> kept;
    kept.reserve(cfg.target_count);
    while (kept.size() < cfg.target_count && stats.candidates_tried < cfg.max_candidates) {
        ++stats.candidates_tried;
        Item candidate = draw();
        if (censor_fn(candidate) == CensorDecision::keep) {
            kept.push_back(std::move(candidate));
            continue;
        }
        bool rescued = false;
        if (cfg.mutate_on_match) {
            for (int retry = 0; retry < cfg.max_mutation_retries; ++retry) {
                candidate = mutate_fn(candidate, affinity_fn(candidate));
                if (censor_fn(candidate) == CensorDecision::keep) {
                    kept.push_back(std::move(candidate));
                    ++stats.mutated_then_kept;
                    rescued = true;
                    break;
                }
            }
        }
        if (!rescued) {
            ++stats.eliminated;
        }
    }
    stats.budget_exhausted = kept.size() < cfg.target_count;
    return kept;
}

}  // namespace

DetectorSet generate_detectors(const SelfSet& self, const GenerationConfig& cfg, int r) {
    cfg.validate();
    Rng rng(cfg.rng_seed);
    GenerationStats stats;

    if (self.shape() == ShapeKind::bits) {
        const std::size_t length = self.bit_length();
        if (r < 1 || static_cast<std::size_t>(r) > length) {
            throw ConfigError("r must satisfy 1 <= r <= L for bit detectors");
        }
        auto kept = generate_loop<BitPattern>(
            cfg, stats,
            [&] { return BitPattern::random(length, rng); },
            [&](const BitPattern& c) { return censor(c, self, r); },
            [&](const BitPattern& c) { return self_match_affinity(c, self); },
            [&](const BitPattern& c, double affinity) {
                return hypermutate(c, affinity, cfg.mutation, rng);
            });
        return DetectorSet(std::move(kept), r, stats);
    }

    if (r != 0) {
        throw ConfigError("r is not used for packet detectors; pass 0");
    }
    auto kept = generate_loop<PacketSignature>(
        cfg, stats,
        [&] { return random_packet_signature(cfg.packet_wildcard_prob, rng); },
        [&](const PacketSignature& c) { return censor(c, self); },
        [&](const PacketSignature& c) { return self_match_affinity(c, self); },
        [&](const PacketSignature& c, double affinity) {
            return hypermutate(c, affinity, cfg.mutation, rng);
        });
    return DetectorSet(std::move(kept), stats);
}

namespace {

template <typename Item, typename Match>
std::vector<Alert> monitor_loop(std::span<const Item> stream, std::size_t detector_count,
                                Match&& matches) {
    std::vector<Alert> alerts;
    for (std::size_t t = 0; t < stream.size(); ++t) {
        Alert alert{t, {}};
        for (std::size_t d = 0; d < detector_count; ++d) {
            if (matches(d, stream[t])) {
                alert.detector_indices.push_back(d);
            }
        }
        if (!alert.detector_indices.empty()) {
            alerts.push_back(std::move(alert));
        }
    }
    return alerts;
}

}  // namespace

std::vector<Alert> monitor(const DetectorSet& detectors, std::span<const BitPattern> stream) {
    const auto& dets = detectors.bit_detectors();
    if (dets.empty()) {
        return {};
    }
    const std::size_t length = detectors.bit_length();
    for (const auto& obs : stream) {
        if (obs.size() != length) {
            throw DimensionError("observation length " + std::to_string(obs.size()) +
                                 " differs from detector length " + std::to_string(length));
        }
    }
    const int r = detectors.match_threshold();
    return monitor_loop<BitPattern>(stream, dets.size(), [&](std::size_t d, const BitPattern& obs) {
        return r_contiguous_match(dets[d], obs, r);
    });
}

std::vector<Alert> monitor(const DetectorSet& detectors,
                           std::span<const PacketSignature> stream) {
    const auto& dets = detectors.packet_detectors();
    if (dets.empty()) {
        return {};
    }
    return monitor_loop<PacketSignature>(
        stream, dets.size(),
        [&](std::size_t d, const PacketSignature& obs) { return packet_match(dets[d], obs); });
}

std::vector<BitPattern> load_bit_patterns(std::istream& in) {
    std::vector<BitPattern> patterns;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        BitPattern p{std::string_view(line)};
        if (!patterns.empty() && p.size() != patterns.front().size()) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": bit patterns must share one length");
        }
        patterns.push_back(std::move(p));
    }
    return patterns;
}

std::vector<BitPattern> load_bit_patterns_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    return load_bit_patterns(in);
}

void write_alerts_csv(std::ostream& out, std::span<const Alert> alerts) {
    out << "record_index,detector_indices\n";
    for (const auto& alert : alerts) {
        out << alert.observation_index << ',';
        for (std::size_t i = 0; i < alert.detector_indices.size(); ++i) {
            if (i > 0) {
                out << ';';
            }
            out << alert.detector_indices[i];
        }
        out << '\n';
    }
}

}  // namespace aiskit
