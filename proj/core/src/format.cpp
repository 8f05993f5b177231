#include "aiskit/format.hpp"

#include <charconv>
#include <system_error>

#include "aiskit/errors.hpp"

namespace aiskit {

std::string format_double(double value) {
    char buffer[64];
    auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

namespace {

[[noreturn]] void fail(std::string_view token, std::string_view context, const char* kind) {
    throw ParseError(std::string(context) + ": expected " + kind + ", got '" +
                     std::string(token) + "'");
}

}  // namespace

double parse_double(std::string_view token, std::string_view context) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
        fail(token, context, "a real number");
    }
    return value;
}

std::uint64_t parse_u64(std::string_view token, std::string_view context) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
        fail(token, context, "a non-negative integer");
    }
    return value;
}

int parse_int(std::string_view token, std::string_view context) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
        fail(token, context, "an integer");
    }
    return value;
}

bool parse_bool(std::string_view token, std::string_view context) {
    if (token == "true" || token == "1") {
        return true;
    }
    if (token == "false" || token == "0") {
        return false;
    }
    fail(token, context, "a boolean (true/false/1/0)");
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
        text.remove_suffix(1);
    }
    return text;
}

}  // namespace aiskit
