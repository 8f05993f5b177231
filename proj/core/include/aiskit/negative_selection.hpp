#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "aiskit/affinity.hpp"
#include "aiskit/encodings.hpp"
#include "aiskit/hypermutation.hpp"

namespace aiskit {

enum class ShapeKind { bits, packet };

/// The trusted patterns detectors are censored against. Homogeneous and
/// non-empty; bit patterns all share one length, packet records are concrete.
class SelfSet {
public:
    static SelfSet from_bits(std::vector<BitPattern> items);
    static SelfSet from_packets(std::vector<PacketSignature> items);

    ShapeKind shape() const { return shape_; }
    std::size_t size() const;

    /// Length L shared by all member patterns. Bits shape only.
    std::size_t bit_length() const;

    const std::vector<BitPattern>& bit_items() const;
    const std::vector<PacketSignature>& packet_items() const;

private:
    SelfSet() = default;

    ShapeKind shape_ = ShapeKind::bits;
    std::vector<BitPattern> bits_;
    std::vector<PacketSignature> packets_;
};

struct GenerationConfig {
    std::size_t target_count = 50;
    std::size_t max_candidates = 10000;
    std::uint64_t rng_seed = 0;

    /// Mutate a censored candidate away from self instead of discarding it
    /// immediately; strength is proportional to its match against self.
    bool mutate_on_match = false;
    int max_mutation_retries = 3;

    /// Per-field wildcard probability when sampling packet detectors.
    double packet_wildcard_prob = 0.5;

    MutationConfig mutation;

    void validate() const;
};

struct GenerationStats {
    std::size_t candidates_tried = 0;
    std::size_t eliminated = 0;
    std::size_t mutated_then_kept = 0;
    bool budget_exhausted = false;
};

enum class CensorDecision { keep, eliminate };

/// Censored detectors plus the match threshold they were censored at.
/// Duplicates are stored as generated. Persists as line-oriented text:
/// a header "shape=<bits|packet> L=<n> r=<n>" followed by one detector per
/// line; the format is canonical, so load/save round-trips byte-identically.
class DetectorSet {
public:
    DetectorSet(std::vector<BitPattern> detectors, int match_threshold_r, GenerationStats stats);
    DetectorSet(std::vector<PacketSignature> detectors, GenerationStats stats);

    ShapeKind shape() const { return shape_; }
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    int match_threshold() const { return match_threshold_r_; }
    const GenerationStats& stats() const { return stats_; }

    const std::vector<BitPattern>& bit_detectors() const;
    const std::vector<PacketSignature>& packet_detectors() const;

    /// Bit length of the detectors; 0 for the packet shape.
    std::size_t bit_length() const;

    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    static DetectorSet load(std::istream& in);
    static DetectorSet load_file(const std::string& path);

private:
    ShapeKind shape_ = ShapeKind::bits;
    std::vector<BitPattern> bits_;
    std::vector<PacketSignature> packets_;
    int match_threshold_r_ = 0;
    GenerationStats stats_;
};

/// Eliminate iff the candidate matches any self item: r-contiguous matching
/// for bit patterns, fieldwise wildcard matching for packet signatures.
CensorDecision censor(const BitPattern& candidate, const SelfSet& self, int r);
CensorDecision censor(const PacketSignature& candidate, const SelfSet& self);

/// Normalized strength of the candidate's best match against the self set,
/// in [0, 1]. Drives mutate-on-match strength.
double self_match_affinity(const BitPattern& candidate, const SelfSet& self);
double self_match_affinity(const PacketSignature& candidate, const SelfSet& self);

/// Randomly generates candidates and censors them against the self set until
/// target_count detectors survive or max_candidates fresh draws are spent.
/// Deterministic for a fixed cfg.rng_seed. A run that exhausts its budget
/// returns the partial set with stats().budget_exhausted set; it is not an
/// error. r is required for the bits shape (1 <= r <= L) and must be 0 for
/// packets.
DetectorSet generate_detectors(const SelfSet& self, const GenerationConfig& cfg, int r);

struct Alert {
    std::size_t observation_index = 0;
    std::vector<std::size_t> detector_indices;

    bool operator==(const Alert&) const = default;
};

/// One alert per observation that at least one detector matches, listing
/// every matching detector. Observations with no match yield nothing.
std::vector<Alert> monitor(const DetectorSet& detectors, std::span<const BitPattern> stream);
std::vector<Alert> monitor(const DetectorSet& detectors,
                           std::span<const PacketSignature> stream);

/// Reads one bit pattern per line; blank trailing line allowed. All lines
/// must share one length.
std::vector<BitPattern> load_bit_patterns(std::istream& in);
std::vector<BitPattern> load_bit_patterns_file(const std::string& path);

void write_alerts_csv(std::ostream& out, std::span<const Alert> alerts);

}  // namespace aiskit
