#pragma once

#include "aiskit/encodings.hpp"

namespace aiskit {

enum class Measure { hamming, contiguous, euclidean, pearson };

std::string_view measure_name(Measure m);
Measure parse_measure(std::string_view name);

struct AffinityConfig {
    Measure measure = Measure::pearson;

    /// Overlap size below which a Pearson correlation is scaled down.
    int pearson_overlap_threshold = 5;

    /// Run length r for r-contiguous bit matching.
    int contiguous_r = 3;

    void validate() const;
};

/// Number of positions on which the two patterns agree: L minus the Hamming
/// distance. Result in [0, L].
int hamming_similarity(const BitPattern& a, const BitPattern& b);

/// Length of the longest run of consecutive positions on which the two
/// patterns agree. Result in [0, L].
int longest_contiguous_match(const BitPattern& a, const BitPattern& b);

/// True iff the patterns agree on at least r consecutive positions.
/// Requires 1 <= r <= L.
bool r_contiguous_match(const BitPattern& a, const BitPattern& b, int r);

double euclidean_distance(const FeatureVector& a, const FeatureVector& b);

struct PearsonResult {
    double r = 0.0;
    int overlap = 0;

    /// Set when either user's overlapping deviations have zero variance; r
    /// is then defined as 0 so callers treat the pair as uninformative.
    bool degenerate = false;
};

/// Pearson correlation over the items both users voted on. Each user's mean
/// is taken over all of their votes, not just the overlapping ones. When the
/// overlap n is below cfg.pearson_overlap_threshold the correlation is
/// scaled by n / threshold; the result is clamped to [-1, 1]. Throws
/// NoOverlapError when the users share no items.
PearsonResult pearson(const VoteProfile& u, const VoteProfile& v, const AffinityConfig& cfg);

/// The penalty applied by pearson(), exposed for direct checking:
/// r * min(1, overlap / threshold).
double apply_overlap_penalty(double r, int overlap, int threshold);

/// True iff every field of the detector equals the packet's field or is a
/// wildcard. The observed packet must be concrete.
bool packet_match(const PacketSignature& detector, const PacketSignature& packet);

}  // namespace aiskit
