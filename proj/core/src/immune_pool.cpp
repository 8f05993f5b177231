#include "aiskit/immune_pool.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <unordered_set>

#include "aiskit/errors.hpp"
#include "aiskit/format.hpp"

namespace aiskit {

AntigenSet::AntigenSet(std::vector<Antigen> antigens) : antigens_(std::move(antigens)) {
    for (const auto& antigen : antigens_) {
        if (!(antigen.concentration > 0.0) || !std::isfinite(antigen.concentration)) {
            throw ConfigError("antigen concentrations must be positive");
        }
    }
}

std::string_view decay_mode_name(DecayMode m) {
    switch (m) {
        case DecayMode::proportional: return "proportional";
        case DecayMode::fixed_amount: return "fixed_amount";
    }
    throw ConfigError("unknown decay mode value");
}

DecayMode parse_decay_mode(std::string_view name) {
    if (name == "proportional") return DecayMode::proportional;
    if (name == "fixed_amount") return DecayMode::fixed_amount;
    throw ParseError("unknown decay mode '" + std::string(name) + "'");
}

void PoolConfig::validate() const {
    if (capacity == 0) {
        throw ConfigError("capacity must be positive");
    }
    if (!(k2 > 0.0) || !(k3 > 0.0)) {
        throw ConfigError("k2 and k3 must be positive");
    }
    if (!(dt > 0.0)) {
        throw ConfigError("dt must be positive");
    }
    if (!(fixed_decay > 0.0)) {
        throw ConfigError("fixed_decay must be positive");
    }
    if (!(initial_concentration > 0.0)) {
        throw ConfigError("initial_concentration must be positive");
    }
    if (removal_floor < 0.0) {
        throw ConfigError("removal_floor must be non-negative");
    }
    if (!(removal_floor < initial_concentration)) {
        throw ConfigError("removal_floor must be below initial_concentration");
    }
    if (!(initial_concentration <= saturation_cap)) {
        throw ConfigError("initial_concentration must not exceed saturation_cap");
    }
    if (decay_mode == DecayMode::proportional && !(dt * k3 < 1.0)) {
        throw ConfigError("dt * k3 must be below 1 in proportional mode");
    }
    if (stability_window == 0) {
        throw ConfigError("stability_window must be positive");
    }
    if (max_iterations == 0) {
        throw ConfigError("max_iterations must be positive");
    }
}

std::string_view trace_event_name(TraceEvent e) {
    switch (e) {
        case TraceEvent::enter: return "enter";
        case TraceEvent::stay: return "stay";
        case TraceEvent::removed: return "removed";
    }
    throw ConfigError("unknown trace event value");
}

ImmunePool::ImmunePool(PoolConfig cfg) : config_(cfg) {
    config_.validate();
}

void ImmunePool::add(PoolCandidate candidate) {
    if (members_.size() >= config_.capacity) {
        throw ConfigError("pool is at capacity");
    }
    for (double m : candidate.match) {
        if (m < 0.0 || !std::isfinite(m)) {
            throw ConfigError("matching values must be non-negative and finite");
        }
    }
    if (!members_.empty() && candidate.match.size() != members_.front().match.size()) {
        throw DimensionError("candidate match vector size differs from pool members");
    }
    if (candidate.antibody.concentration < 0.0) {
        throw ConfigError("antibody concentration must be non-negative");
    }
    members_.push_back(std::move(candidate));
}

StepResult ImmunePool::step(const AntigenSet& antigens) {
    StepResult result;
    if (members_.empty()) {
        return result;
    }
    if (members_.front().match.size() != antigens.size()) {
        throw DimensionError("match vector size " +
                             std::to_string(members_.front().match.size()) +
                             " differs from antigen count " + std::to_string(antigens.size()));
    }

    for (auto& member : members_) {
        double stimulation_sum = 0.0;
        for (std::size_t j = 0; j < antigens.size(); ++j) {
            stimulation_sum += member.match[j] * antigens[j].concentration;
        }
        const double x = member.antibody.concentration;
        const double stimulation = config_.k2 * x * stimulation_sum;
        const double decay = config_.decay_mode == DecayMode::proportional
                                 ? config_.k3 * x
                                 : config_.fixed_decay;
        double next = x + config_.dt * (stimulation - decay);
        next = std::clamp(next, 0.0, config_.saturation_cap);
        member.antibody.concentration = next;
    }

    auto survivor = members_.begin();
    for (auto it = members_.begin(); it != members_.end(); ++it) {
        if (it->antibody.concentration < config_.removal_floor) {
            result.removed.push_back({it->antibody.id, it->antibody.concentration});
        } else {
            if (survivor != it) {
                *survivor = std::move(*it);
            }
            ++survivor;
        }
    }
    members_.erase(survivor, members_.end());
    return result;
}

MatchMatrix ImmunePool::match_matrix() const {
    MatchMatrix matrix;
    matrix.antibody_count = members_.size();
    matrix.antigen_count = members_.empty() ? 0 : members_.front().match.size();
    matrix.values.resize(matrix.antigen_count * matrix.antibody_count);
    for (std::size_t j = 0; j < matrix.antigen_count; ++j) {
        for (std::size_t i = 0; i < matrix.antibody_count; ++i) {
            matrix.values[j * matrix.antibody_count + i] = members_[i].match[j];
        }
    }
    return matrix;
}

StabilizationResult run_to_stability(std::span<const PoolCandidate> candidates,
                                     const AntigenSet& antigens, const PoolConfig& cfg) {
    cfg.validate();
    if (candidates.empty()) {
        throw EmptyPoolError("candidate stream is empty");
    }

    StabilizationResult result{ImmunePool(cfg), {}, false, false, 0};
    ImmunePool& pool = result.pool;
    std::size_t next_candidate = 0;
    std::size_t unchanged_run = 0;

    for (std::size_t iteration = 1; iteration <= cfg.max_iterations; ++iteration) {
        result.iterations = iteration;

        // Refill open slots in stream order; entrants start at the
        // configured initial concentration.
        std::unordered_set<std::uint64_t> entered;
        while (pool.size() < cfg.capacity && next_candidate < candidates.size()) {
            PoolCandidate entrant = candidates[next_candidate++];
            entrant.antibody.concentration = cfg.initial_concentration;
            entered.insert(entrant.antibody.id);
            pool.add(std::move(entrant));
        }

        const StepResult stepped = pool.step(antigens);

        for (const auto& member : pool.members()) {
            result.trace.push_back({iteration, member.antibody.id,
                                    member.antibody.concentration,
                                    entered.contains(member.antibody.id) ? TraceEvent::enter
                                                                         : TraceEvent::stay});
        }
        for (const RemovedAntibody& gone : stepped.removed) {
            result.trace.push_back({iteration, gone.id, gone.concentration, TraceEvent::removed});
        }

        const bool changed = !entered.empty() || !stepped.removed.empty();
        unchanged_run = changed ? 0 : unchanged_run + 1;
        if (unchanged_run >= cfg.stability_window) {
            result.stable = true;
            return result;
        }
    }
    result.hit_max_iterations = true;
    return result;
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace) {
    out << "iteration,antibody_id,concentration,event\n";
    for (const auto& row : trace) {
        out << row.iteration << ',' << row.antibody_id << ','
            << format_double(row.concentration) << ',' << trace_event_name(row.event) << '\n';
    }
}

Antibody hypermutate(const Antibody& antibody, double affinity, const MutationConfig& cfg,
                     Rng& rng) {
    Antibody out = antibody;
    std::visit(
        [&](const auto& shape) {
            using Shape = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<Shape, VoteProfile>) {
                throw UnsupportedMutationError(
                    "vote profiles cannot be hypermutated; mutated users would not be real "
                    "raters");
            } else {
                out.shape = hypermutate(shape, affinity, cfg, rng);
            }
        },
        antibody.shape);
    return out;
}

}  // namespace aiskit
