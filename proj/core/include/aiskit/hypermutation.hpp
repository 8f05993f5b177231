#pragma once

#include "aiskit/encodings.hpp"
#include "aiskit/rng.hpp"

namespace aiskit {

/// Whether mutation strength grows with the match (shake well-matched
/// detectors away from self) or with its complement (refine poor matches).
enum class MutationDirection { proportional_to_affinity, inverse_to_affinity };

std::string_view mutation_direction_name(MutationDirection d);
MutationDirection parse_mutation_direction(std::string_view name);

struct MutationConfig {
    MutationDirection direction = MutationDirection::proportional_to_affinity;

    /// Fraction of positions changed at full strength. The number of changes
    /// is rate * length * strength, rounded, floored at one change.
    double rate = 0.25;

    /// Scale of a feature-value perturbation; the applied magnitude is
    /// sigma * strength, floored at sigma_floor.
    double sigma = 1.0;
    double sigma_floor = 1e-3;

    /// Wildcard probability when re-sampling packet fields.
    double packet_wildcard_prob = 0.5;

    void validate() const;
};

/// Flips a strength-scaled number of distinct positions; always at least one.
BitPattern hypermutate(const BitPattern& pattern, double affinity, const MutationConfig& cfg,
                       Rng& rng);

/// Perturbs one value chosen at random by +/- max(sigma_floor, sigma * strength).
FeatureVector hypermutate(const FeatureVector& vec, double affinity, const MutationConfig& cfg,
                          Rng& rng);

/// Re-samples a strength-scaled number of distinct fields from the detector
/// generation distribution; each re-sampled field is guaranteed to change.
PacketSignature hypermutate(const PacketSignature& sig, double affinity,
                            const MutationConfig& cfg, Rng& rng);

/// Draws a random packet signature: protocol uniform over the enum including
/// the wildcard; each ip/port independently a wildcard with probability
/// wildcard_prob, else uniform over its range.
PacketSignature random_packet_signature(double wildcard_prob, Rng& rng);

}  // namespace aiskit
