#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "aiskit/encodings.hpp"
#include "aiskit/hypermutation.hpp"

namespace aiskit {

using AntibodyShape = std::variant<BitPattern, FeatureVector, VoteProfile, PacketSignature>;

/// A candidate matcher carrying a concentration. The id is opaque to the
/// pool; the recommender uses source user ids.
struct Antibody {
    AntibodyShape shape;
    double concentration = 0.0;
    std::uint64_t id = 0;
};

struct Antigen {
    AntibodyShape shape;
    double concentration = 1.0;
};

/// Ordered antigens with positive concentrations y_j.
class AntigenSet {
public:
    explicit AntigenSet(std::vector<Antigen> antigens);

    std::size_t size() const { return antigens_.size(); }
    const Antigen& operator[](std::size_t j) const { return antigens_[j]; }

private:
    std::vector<Antigen> antigens_;
};

enum class DecayMode { proportional, fixed_amount };

std::string_view decay_mode_name(DecayMode m);
DecayMode parse_decay_mode(std::string_view name);

struct PoolConfig {
    std::size_t capacity = 10;

    /// Stimulation coefficient k2 and death rate k3 of the concentration
    /// update dx_i/dt = k2 * (sum_j m_ji * x_i * y_j) - k3 * x_i.
    double k2 = 0.1;
    double k3 = 0.05;

    /// Euler time step for the discrete update.
    double dt = 1.0;

    DecayMode decay_mode = DecayMode::proportional;

    /// Per-step decrement used in fixed_amount mode.
    double fixed_decay = 0.05;

    double initial_concentration = 1.0;

    /// Antibodies falling below this after a step are removed.
    double removal_floor = 0.1;

    /// Hard clamp ceiling applied after every step.
    double saturation_cap = 100.0;

    /// Consecutive iterations without a membership change after which the
    /// pool counts as stable.
    std::size_t stability_window = 10;

    std::size_t max_iterations = 10000;

    void validate() const;
};

/// Antibody paired with its matching values m_j against each antigen.
struct PoolCandidate {
    Antibody antibody;
    std::vector<double> match;
};

/// Snapshot of m_ji values, row-major by antigen.
struct MatchMatrix {
    std::size_t antigen_count = 0;
    std::size_t antibody_count = 0;
    std::vector<double> values;

    double at(std::size_t antigen, std::size_t antibody) const {
        return values[antigen * antibody_count + antibody];
    }
};

enum class TraceEvent { enter, stay, removed };

std::string_view trace_event_name(TraceEvent e);

struct TraceRow {
    std::size_t iteration = 0;
    std::uint64_t antibody_id = 0;
    double concentration = 0.0;
    TraceEvent event = TraceEvent::stay;
};

struct RemovedAntibody {
    std::uint64_t id = 0;

    /// Post-update concentration that fell below the removal floor.
    double concentration = 0.0;
};

struct StepResult {
    std::vector<RemovedAntibody> removed;
};

/// Bounded antibody population under stimulation/decay dynamics. Members are
/// kept in insertion order. A pool instance is single-writer; distinct pools
/// are independent.
class ImmunePool {
public:
    explicit ImmunePool(PoolConfig cfg);

    /// Adds a member at its current concentration. Match values must be
    /// non-negative and agree in count with earlier members.
    void add(PoolCandidate candidate);

    /// One explicit Euler update:
    ///   x <- x + dt * (k2 * x * sum_j m_j * y_j - decay)
    /// with decay = k3 * x (proportional) or fixed_decay (fixed_amount),
    /// then clamped to [0, saturation_cap]. Members below removal_floor are
    /// removed and reported in order.
    StepResult step(const AntigenSet& antigens);

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<PoolCandidate>& members() const { return members_; }
    const PoolConfig& config() const { return config_; }

    MatchMatrix match_matrix() const;

private:
    PoolConfig config_;
    std::vector<PoolCandidate> members_;
};

struct StabilizationResult {
    ImmunePool pool;
    std::vector<TraceRow> trace;

    /// Membership was unchanged for stability_window consecutive iterations.
    bool stable = false;

    /// The run stopped at max_iterations instead of stabilizing.
    bool hit_max_iterations = false;

    std::size_t iterations = 0;
};

/// The fill/iterate/refill loop: fill the pool to capacity from the stream
/// (each entrant starts at initial_concentration), step, refill whenever
/// drop-outs open slots, and stop once membership has not changed for
/// stability_window consecutive iterations or max_iterations is reached.
/// Candidates enter in stream order; a removed candidate is never
/// re-admitted. Candidate ids must be unique within the stream. Throws
/// EmptyPoolError when the stream is empty.
StabilizationResult run_to_stability(std::span<const PoolCandidate> candidates,
                                     const AntigenSet& antigens, const PoolConfig& cfg);

/// CSV with header iteration,antibody_id,concentration,event.
void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace);

/// Shape-appropriate mutation of the antibody: bit flips, feature
/// perturbation, or packet field re-sampling. Vote profiles cannot be
/// mutated and raise UnsupportedMutationError.
Antibody hypermutate(const Antibody& antibody, double affinity, const MutationConfig& cfg,
                     Rng& rng);

}  // namespace aiskit
