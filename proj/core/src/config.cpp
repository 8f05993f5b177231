#include "aiskit/config.hpp"

#include <cctype>
#include <fstream>

#include "aiskit/errors.hpp"
#include "aiskit/format.hpp"

namespace aiskit {

RunConfig RunConfig::with_defaults() {
    RunConfig cfg;
    // Pool dynamics.
    cfg.set_default("capacity", "10");
    cfg.set_default("k2", "0.1");
    cfg.set_default("k3", "0.05");
    cfg.set_default("dt", "1");
    cfg.set_default("decay_mode", "proportional");
    cfg.set_default("fixed_decay", "0.05");
    cfg.set_default("initial_concentration", "1");
    // removal_floor and saturation_cap default to 0.1x and 100x the initial
    // concentration; they are derived in pool_config() when unset.
    cfg.set_default("stability_window", "10");
    cfg.set_default("max_iterations", "10000");
    // Detector generation.
    cfg.set_default("target_count", "50");
    cfg.set_default("max_candidates", "10000");
    cfg.set_default("mutate_on_match", "false");
    cfg.set_default("max_mutation_retries", "3");
    cfg.set_default("packet_wildcard_prob", "0.5");
    // Affinity.
    cfg.set_default("measure", "pearson");
    cfg.set_default("pearson_overlap_threshold", "5");
    cfg.set_default("contiguous_r", "3");
    // Mutation operator.
    cfg.set_default("mutation_direction", "proportional");
    cfg.set_default("mutation_rate", "0.25");
    cfg.set_default("mutation_sigma", "1");
    cfg.set_default("mutation_sigma_floor", "0.001");
    // Master seed.
    cfg.set_default("seed", "0");
    return cfg;
}

void RunConfig::set_default(std::string key, std::string value) {
    defaults_[std::move(key)] = std::move(value);
}

void RunConfig::set_file(std::string key, std::string value) {
    file_[std::move(key)] = std::move(value);
}

void RunConfig::set_env(std::string key, std::string value) {
    env_[std::move(key)] = std::move(value);
}

void RunConfig::set_flag(std::string key, std::string value) {
    flags_[std::move(key)] = std::move(value);
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = trim(line);
        if (text.empty() || text.front() == '#') {
            continue;
        }
        const std::size_t eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("config line " + std::to_string(line_no) +
                             ": expected 'key = value', got '" + std::string(text) + "'");
        }
        const std::string key{trim(text.substr(0, eq))};
        const std::string value{trim(text.substr(eq + 1))};
        if (key.empty()) {
            throw ParseError("config line " + std::to_string(line_no) + ": empty key");
        }
        set_file(key, value);
    }
}

void RunConfig::load_env(const char* const* envp) {
    constexpr std::string_view prefix = "AIS_";
    for (; envp != nullptr && *envp != nullptr; ++envp) {
        const std::string_view entry{*envp};
        if (!entry.starts_with(prefix)) {
            continue;
        }
        const std::size_t eq = entry.find('=');
        if (eq == std::string_view::npos || eq <= prefix.size()) {
            continue;
        }
        std::string key{entry.substr(prefix.size(), eq - prefix.size())};
        for (char& c : key) {
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
        set_env(std::move(key), std::string(entry.substr(eq + 1)));
    }
}

bool RunConfig::has(std::string_view key) const {
    return raw(key).has_value();
}

std::optional<std::string> RunConfig::raw(std::string_view key) const {
    for (const auto* layer : {&flags_, &env_, &file_, &defaults_}) {
        auto it = layer->find(key);
        if (it != layer->end()) {
            return it->second;
        }
    }
    return std::nullopt;
}

std::string RunConfig::get_string(std::string_view key) const {
    auto value = raw(key);
    if (!value) {
        throw ConfigError("missing required configuration key '" + std::string(key) + "'");
    }
    return *value;
}

double RunConfig::get_double(std::string_view key) const {
    return parse_double(get_string(key), key);
}

std::uint64_t RunConfig::get_u64(std::string_view key) const {
    return parse_u64(get_string(key), key);
}

int RunConfig::get_int(std::string_view key) const {
    return parse_int(get_string(key), key);
}

bool RunConfig::get_bool(std::string_view key) const {
    return parse_bool(get_string(key), key);
}

std::size_t RunConfig::get_size(std::string_view key) const {
    return static_cast<std::size_t>(get_u64(key));
}

PoolConfig RunConfig::pool_config() const {
    PoolConfig cfg;
    cfg.capacity = get_size("capacity");
    cfg.k2 = get_double("k2");
    cfg.k3 = get_double("k3");
    cfg.dt = get_double("dt");
    cfg.decay_mode = parse_decay_mode(get_string("decay_mode"));
    cfg.fixed_decay = get_double("fixed_decay");
    cfg.initial_concentration = get_double("initial_concentration");
    cfg.removal_floor = has("removal_floor") ? get_double("removal_floor")
                                             : 0.1 * cfg.initial_concentration;
    cfg.saturation_cap = has("saturation_cap") ? get_double("saturation_cap")
                                               : 100.0 * cfg.initial_concentration;
    cfg.stability_window = get_size("stability_window");
    cfg.max_iterations = get_size("max_iterations");
    cfg.validate();
    return cfg;
}

GenerationConfig RunConfig::generation_config() const {
    GenerationConfig cfg;
    cfg.target_count = get_size("target_count");
    cfg.max_candidates = get_size("max_candidates");
    cfg.rng_seed = seed();
    cfg.mutate_on_match = get_bool("mutate_on_match");
    cfg.max_mutation_retries = get_int("max_mutation_retries");
    cfg.packet_wildcard_prob = get_double("packet_wildcard_prob");
    cfg.mutation = mutation_config();
    cfg.validate();
    return cfg;
}

AffinityConfig RunConfig::affinity_config() const {
    AffinityConfig cfg;
    cfg.measure = parse_measure(get_string("measure"));
    cfg.pearson_overlap_threshold = get_int("pearson_overlap_threshold");
    cfg.contiguous_r = get_int("contiguous_r");
    cfg.validate();
    return cfg;
}

MutationConfig RunConfig::mutation_config() const {
    MutationConfig cfg;
    cfg.direction = parse_mutation_direction(get_string("mutation_direction"));
    cfg.rate = get_double("mutation_rate");
    cfg.sigma = get_double("mutation_sigma");
    cfg.sigma_floor = get_double("mutation_sigma_floor");
    cfg.packet_wildcard_prob = get_double("packet_wildcard_prob");
    cfg.validate();
    return cfg;
}

}  // namespace aiskit
