#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "aiskit/affinity.hpp"
#include "aiskit/encodings.hpp"
#include "aiskit/immune_pool.hpp"

namespace aiskit {

using UserId = std::uint64_t;

/// User profiles over a shared item catalog with integer scores in [0, 5].
class RatingsDataset {
public:
    RatingsDataset() = default;

    /// Throws ConfigError on a duplicate (user, item) vote or an
    /// out-of-range rating.
    void add_vote(UserId user, ItemId item, int rating);

    /// CSV with header `user_id,item_id,rating`. Malformed rows are rejected
    /// with their 1-based line number; quoted fields are not accepted.
    static RatingsDataset from_csv(std::istream& in);
    static RatingsDataset load_file(const std::string& path);

    const std::map<UserId, VoteProfile>& profiles() const { return profiles_; }
    const std::set<ItemId>& catalog() const { return catalog_; }
    bool has_user(UserId user) const { return profiles_.contains(user); }

    /// Throws NotFoundError for an unknown user.
    const VoteProfile& profile(UserId user) const;

private:
    std::map<UserId, VoteProfile> profiles_;
    std::set<ItemId> catalog_;
};

void write_ratings_csv(std::ostream& out, const RatingsDataset& dataset);

struct AffinityResult {
    /// Matching value fed to the pool: |r|. Magnitude selects; sign is
    /// retained for prediction.
    double m = 0.0;
    double r = 0.0;
    bool degenerate = false;
    bool no_overlap = false;
    int overlap = 0;
};

/// Penalized Pearson correlation between a candidate and the target. A pair
/// with no overlapping votes yields m = 0 with the no_overlap flag rather
/// than an error.
AffinityResult affinity_of(const VoteProfile& candidate, const VoteProfile& target,
                           const AffinityConfig& cfg);

struct Neighbor {
    UserId user = 0;
    double concentration = 0.0;
    double r = 0.0;
    bool degenerate = false;
};

struct Neighborhood {
    UserId target = 0;

    /// Stabilized survivors in stream (ascending user id) order.
    std::vector<Neighbor> neighbors;

    bool stable = false;
    bool hit_max_iterations = false;

    /// No candidate had a positive matching value, or every entrant decayed
    /// out before stabilization.
    bool empty = false;

    std::vector<TraceRow> trace;
    std::size_t iterations = 0;
};

/// Encodes the target as the antigen (held at y = 1) and every other user as
/// a candidate antibody in ascending user-id order, then stabilizes a pool
/// on |pearson| matching. Candidates with m = 0 (no overlap, degenerate, or
/// zero correlation) cannot be stimulated and are not entered.
Neighborhood build_neighborhood(UserId target, const RatingsDataset& dataset,
                                const PoolConfig& pool_cfg, const AffinityConfig& affinity_cfg);

struct Prediction {
    ItemId item = 0;

    /// Predicted score clamped to [0, 5].
    double score = 0.0;

    /// Unclamped value, kept for diagnostics.
    double raw_score = 0.0;

    std::size_t neighbors_used = 0;
    std::size_t degenerate_neighbors = 0;
};

/// Concentration-weighted mean-offset prediction over neighbors who rated
/// the item:
///   p = mean(target) + sum_i w_i * (v_i - mean_i) / sum_i |w_i|,
/// with signed weights w_i = concentration_i * r_i, so strongly
/// anti-correlated neighbors contribute through inverted deviations. Throws
/// NoDataError when no neighbor rated the item.
Prediction predict(const RatingsDataset& dataset, const Neighborhood& neighborhood,
                   ItemId item);

/// Predictions for every catalog item the target has not rated and at least
/// one neighbor has, sorted by score descending with ties broken by
/// ascending item id, truncated to k. An empty result is valid.
std::vector<Prediction> recommend(const RatingsDataset& dataset,
                                  const Neighborhood& neighborhood, std::size_t k);

/// CSV with header `user_id,item_id,prediction,neighbors`.
void write_predictions_csv(std::ostream& out, UserId user,
                           std::span<const Prediction> predictions);

}  // namespace aiskit
