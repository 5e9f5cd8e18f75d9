#pragma once

// Family text format:
//   n=<k>
//   1,3,4
//   -          (the empty set)
// '#' starts a comment; blank lines are ignored.

#include <iosfwd>
#include <string>
#include <string_view>

#include "knv/sets.hpp"

namespace knv {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

[[nodiscard]] std::string format_family(const Family& family);
void write_family(std::ostream& out, const Family& family);

[[nodiscard]] Family parse_family(std::string_view text);
[[nodiscard]] Family read_family(std::istream& in);
[[nodiscard]] Family load_family_file(const std::string& path);

}  // namespace knv
