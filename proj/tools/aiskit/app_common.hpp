#pragma once

#include <deque>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aiskit/config.hpp"
#include "aiskit/errors.hpp"

namespace aiskit::app {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNotConverged = 3;

/// Records CLI option values and pushes the ones actually given into the
/// flag layer of a RunConfig, preserving the flags > env > file > defaults
/// precedence.
class FlagSet {
public:
    void bind(CLI::App* cmd, const std::string& flag, const std::string& key,
              const std::string& description) {
        values_.emplace_back();
        bindings_.push_back({cmd->add_option(flag, values_.back(), description), key,
                             &values_.back()});
    }

    void bind_flag(CLI::App* cmd, const std::string& flag, const std::string& key,
                   const std::string& description) {
        bindings_.push_back({cmd->add_flag(flag, description), key, nullptr});
    }

    void apply(RunConfig& cfg) const {
        for (const auto& binding : bindings_) {
            if (binding.option->count() > 0) {
                cfg.set_flag(binding.key, binding.value ? *binding.value : "true");
            }
        }
    }

private:
    struct Binding {
        CLI::Option* option;
        std::string key;
        const std::string* value;
    };

    std::deque<std::string> values_;
    std::vector<Binding> bindings_;
};

/// Writes to --out when given, stdout otherwise.
class OutputSink {
public:
    explicit OutputSink(const std::optional<std::string>& path) {
        if (path) {
            path_ = *path;
            file_.open(*path, std::ios::binary);
            if (!file_) {
                throw IoError("cannot open '" + *path + "' for writing");
            }
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

    void finish() {
        if (file_.is_open()) {
            file_.flush();
            if (!file_) {
                throw IoError("failed writing to '" + path_ + "'");
            }
            file_.close();
        } else {
            std::cout.flush();
        }
    }

private:
    std::string path_;
    std::ofstream file_;
};

enum class StreamKind { bits, packets };

/// Distinguishes a packet-log CSV from a bit-pattern file by its first line.
StreamKind sniff_stream(const std::string& path);

std::optional<std::string> out_path(const RunConfig& cfg);
bool trace_requested(const RunConfig& cfg);

/// Trace CSV lands next to the main output: OUT.trace.csv, or trace.csv when
/// writing to stdout.
std::string trace_path(const RunConfig& cfg);

int run_recommend(const RunConfig& cfg, const CLI::App& predict_cmd, const CLI::App& top_cmd);
int run_nsd(const RunConfig& cfg, const CLI::App& train_cmd, const CLI::App& monitor_cmd,
            const CLI::App& eval_cmd);
int run_synth(const RunConfig& cfg, const CLI::App& ratings_cmd, const CLI::App& packets_cmd);

}  // namespace aiskit::app
