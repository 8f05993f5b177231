#include "aiskit/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "aiskit/errors.hpp"
#include "aiskit/format.hpp"

namespace aiskit {

void RatingsDataset::add_vote(UserId user, ItemId item, int rating) {
    auto [it, inserted] = profiles_.try_emplace(user);
    (void)inserted;
    it->second.add_vote(item, rating);
    catalog_.insert(item);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

[[noreturn]] void reject_line(std::size_t line_no, const std::string& why) {
    throw ParseError("line " + std::to_string(line_no) + ": " + why);
}

void reject_quotes(std::string_view line, std::size_t line_no) {
    if (line.find('"') != std::string_view::npos) {
        reject_line(line_no, "quoted fields are not accepted");
    }
}

}  // namespace

RatingsDataset RatingsDataset::from_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError("ratings file is empty");
    }
    ++line_no;
    if (line != "user_id,item_id,rating") {
        reject_line(line_no, "expected header 'user_id,item_id,rating'");
    }

    RatingsDataset dataset;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        reject_quotes(line, line_no);
        auto fields = split_fields(line);
        if (fields.size() != 3) {
            reject_line(line_no, "expected 3 fields, got " + std::to_string(fields.size()));
        }
        try {
            const UserId user = parse_u64(trim(fields[0]), "user_id");
            const ItemId item = parse_u64(trim(fields[1]), "item_id");
            const int rating = parse_int(trim(fields[2]), "rating");
            dataset.add_vote(user, item, rating);
        } catch (const Error& e) {
            reject_line(line_no, e.what());
        }
    }
    return dataset;
}

RatingsDataset RatingsDataset::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    return from_csv(in);
}

const VoteProfile& RatingsDataset::profile(UserId user) const {
    auto it = profiles_.find(user);
    if (it == profiles_.end()) {
        throw NotFoundError("unknown user " + std::to_string(user));
    }
    return it->second;
}

void write_ratings_csv(std::ostream& out, const RatingsDataset& dataset) {
    out << "user_id,item_id,rating\n";
    for (const auto& [user, profile] : dataset.profiles()) {
        for (const auto& [item, rating] : profile.votes()) {
            out << user << ',' << item << ',' << rating << '\n';
        }
    }
}

AffinityResult affinity_of(const VoteProfile& candidate, const VoteProfile& target,
                           const AffinityConfig& cfg) {
    try {
        const PearsonResult p = pearson(candidate, target, cfg);
        return {std::fabs(p.r), p.r, p.degenerate, false, p.overlap};
    } catch (const NoOverlapError&) {
        return {0.0, 0.0, false, true, 0};
    }
}

Neighborhood build_neighborhood(UserId target, const RatingsDataset& dataset,
                                const PoolConfig& pool_cfg,
                                const AffinityConfig& affinity_cfg) {
    const VoteProfile& target_profile = dataset.profile(target);

    std::vector<PoolCandidate> stream;
    std::map<UserId, AffinityResult> affinities;
    for (const auto& [user, profile] : dataset.profiles()) {
        if (user == target) {
            continue;
        }
        const AffinityResult affinity = affinity_of(profile, target_profile, affinity_cfg);
        if (affinity.m > 0.0) {
            stream.push_back({Antibody{profile, 0.0, user}, {affinity.m}});
            affinities.emplace(user, affinity);
        }
    }

    Neighborhood hood;
    hood.target = target;
    if (stream.empty()) {
        hood.empty = true;
        hood.stable = true;
        return hood;
    }

    const AntigenSet antigens({Antigen{target_profile, 1.0}});
    StabilizationResult run = run_to_stability(stream, antigens, pool_cfg);
    for (const PoolCandidate& member : run.pool.members()) {
        const AffinityResult& affinity = affinities.at(member.antibody.id);
        hood.neighbors.push_back({member.antibody.id, member.antibody.concentration,
                                  affinity.r, affinity.degenerate});
    }
    hood.stable = run.stable;
    hood.hit_max_iterations = run.hit_max_iterations;
    hood.empty = hood.neighbors.empty();
    hood.trace = std::move(run.trace);
    hood.iterations = run.iterations;
    return hood;
}

Prediction predict(const RatingsDataset& dataset, const Neighborhood& neighborhood,
                   ItemId item) {
    const VoteProfile& target_profile = dataset.profile(neighborhood.target);
    const double target_mean = target_profile.mean();

    double weighted_offsets = 0.0;
    double weight_magnitude = 0.0;
    std::size_t used = 0;
    std::size_t degenerate = 0;
    for (const Neighbor& neighbor : neighborhood.neighbors) {
        const VoteProfile& profile = dataset.profile(neighbor.user);
        const auto vote = profile.vote_for(item);
        if (!vote) {
            continue;
        }
        const double weight = neighbor.concentration * neighbor.r;
        weighted_offsets += weight * (static_cast<double>(*vote) - profile.mean());
        weight_magnitude += std::fabs(weight);
        ++used;
        degenerate += neighbor.degenerate ? 1 : 0;
    }
    if (used == 0) {
        throw NoDataError("no neighbor rated item " + std::to_string(item));
    }

    // All-zero weights carry no directional information; the offset is 0.
    const double raw =
        weight_magnitude > 0.0 ? target_mean + weighted_offsets / weight_magnitude
                               : target_mean;
    return {item, std::clamp(raw, 0.0, 5.0), raw, used, degenerate};
}

std::vector<Prediction> recommend(const RatingsDataset& dataset,
                                  const Neighborhood& neighborhood, std::size_t k) {
    if (k < 1) {
        throw ConfigError("k must be at least 1");
    }
    const VoteProfile& target_profile = dataset.profile(neighborhood.target);

    std::vector<Prediction> predictions;
    for (ItemId item : dataset.catalog()) {
        if (target_profile.vote_for(item)) {
            continue;
        }
        try {
            predictions.push_back(predict(dataset, neighborhood, item));
        } catch (const NoDataError&) {
            // Item unrated by every neighbor; not predictable.
        }
    }
    std::sort(predictions.begin(), predictions.end(),
              [](const Prediction& a, const Prediction& b) {
                  if (a.score != b.score) {
                      return a.score > b.score;
                  }
                  return a.item < b.item;
              });
    if (predictions.size() > k) {
        predictions.resize(k);
    }
    return predictions;
}

void write_predictions_csv(std::ostream& out, UserId user,
                           std::span<const Prediction> predictions) {
    out << "user_id,item_id,prediction,neighbors\n";
    for (const Prediction& p : predictions) {
        out << user << ',' << p.item << ',' << format_double(p.score) << ','
            << p.neighbors_used << '\n';
    }
}

}  // namespace aiskit
