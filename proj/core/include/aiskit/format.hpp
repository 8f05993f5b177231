#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace aiskit {

/// Shortest decimal form that round-trips to the same double. Used for all
/// numeric file output so emitted files are byte-stable and lossless.
std::string format_double(double value);

/// Strict, locale-free numeric parsing. The whole token must be consumed.
/// Each throws ParseError on failure; the context string is included in the
/// message.
double parse_double(std::string_view token, std::string_view context);
std::uint64_t parse_u64(std::string_view token, std::string_view context);
int parse_int(std::string_view token, std::string_view context);
bool parse_bool(std::string_view token, std::string_view context);

/// Strips leading and trailing spaces and tabs.
std::string_view trim(std::string_view text);

}  // namespace aiskit
