#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "knv/family_io.hpp"

namespace knv::detail {

struct Line {
    int number;
    std::string_view text;
};

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

/// Non-blank lines with comments stripped, trimmed, with 1-based line numbers.
inline std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    while (!text.empty()) {
        ++number;
        const auto eol = text.find('\n');
        std::string_view raw = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        // '#' starts a comment anywhere on a line.
        std::string_view t = trim(raw.substr(0, raw.find('#')));
        if (t.empty()) {
            continue;
        }
        out.push_back({number, t});
    }
    return out;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = s.find(sep);
        out.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos) {
            break;
        }
        s = s.substr(pos + 1);
    }
    return out;
}

/// Whitespace-separated tokens.
inline std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

inline int parse_int(std::string_view s, int line) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line, "expected an integer, got '" + std::string(s) + "'");
    }
    return value;
}

}  // namespace knv::detail
