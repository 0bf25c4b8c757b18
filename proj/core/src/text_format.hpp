#pragma once

// Shared helpers for the line-based text formats. Doubles are written in the
// shortest form that round-trips exactly, so files are diffable and stable.

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "objloc/errors.hpp"

namespace objloc::detail {

inline std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

inline std::vector<std::string_view> split_fields(std::string_view line, char sep = ' ') {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const std::size_t next = line.find(sep, pos);
        const std::size_t end = next == std::string_view::npos ? line.size() : next;
        if (end > pos || sep != ' ') {
            out.push_back(line.substr(pos, end - pos));
        }
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

inline double parse_double(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(line_no, "expected a number, got '" + std::string(field) + "'");
    }
    return v;
}

inline std::int64_t parse_int(std::string_view field, std::size_t line_no) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(line_no, "expected an integer, got '" + std::string(field) + "'");
    }
    return v;
}

}  // namespace objloc::detail
