#include "app_common.hpp"

#include "aiskit/errors.hpp"
#include "aiskit/format.hpp"

namespace aiskit::app {

StreamKind sniff_stream(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::string first;
    if (!std::getline(in, first)) {
        throw ParseError("'" + path + "' is empty");
    }
    if (first.starts_with("proto,")) {
        return StreamKind::packets;
    }
    const bool all_binary =
        !first.empty() &&
        first.find_first_not_of("01") == std::string::npos;
    if (all_binary) {
        return StreamKind::bits;
    }
    throw ParseError("'" + path + "' is neither a packet log nor a bit-pattern file");
}

std::optional<std::string> out_path(const RunConfig& cfg) {
    return cfg.raw("out");
}

bool trace_requested(const RunConfig& cfg) {
    const auto value = cfg.raw("trace");
    return value && parse_bool(*value, "trace");
}

std::string trace_path(const RunConfig& cfg) {
    const auto out = out_path(cfg);
    return out ? *out + ".trace.csv" : std::string("trace.csv");
}

}  // namespace aiskit::app
