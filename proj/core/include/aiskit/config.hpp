#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "aiskit/affinity.hpp"
#include "aiskit/hypermutation.hpp"
#include "aiskit/immune_pool.hpp"
#include "aiskit/negative_selection.hpp"

namespace aiskit {

/// Layered key-value configuration. Lookup precedence is flags, then
/// environment (`AIS_<UPPER_KEY>`), then config file (`key = value` lines),
/// then built-in defaults. Typed getters validate on access; the
/// *_config() builders validate the assembled structs, so every resolved
/// value passes its module's invariants before a run starts.
class RunConfig {
public:
    /// Seeds the default layer with every documented default.
    static RunConfig with_defaults();

    void set_default(std::string key, std::string value);
    void set_file(std::string key, std::string value);
    void set_env(std::string key, std::string value);
    void set_flag(std::string key, std::string value);

    /// Parses `key = value` lines; '#' starts a comment, blank lines are
    /// skipped.
    void load_file(const std::string& path);

    /// Scans a null-terminated environment block for AIS_* variables.
    void load_env(const char* const* envp);

    bool has(std::string_view key) const;
    std::optional<std::string> raw(std::string_view key) const;

    std::string get_string(std::string_view key) const;
    double get_double(std::string_view key) const;
    std::uint64_t get_u64(std::string_view key) const;
    int get_int(std::string_view key) const;
    bool get_bool(std::string_view key) const;
    std::size_t get_size(std::string_view key) const;

    std::uint64_t seed() const { return get_u64("seed"); }

    PoolConfig pool_config() const;
    GenerationConfig generation_config() const;
    AffinityConfig affinity_config() const;
    MutationConfig mutation_config() const;

private:
    std::map<std::string, std::string, std::less<>> defaults_;
    std::map<std::string, std::string, std::less<>> file_;
    std::map<std::string, std::string, std::less<>> env_;
    std::map<std::string, std::string, std::less<>> flags_;
};

}  // namespace aiskit
