#include "knv/family_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "text_util.hpp"

namespace knv {

void write_family(std::ostream& out, const Family& family) {
    out << "n=" << family.ground().value() << '\n';
    for (SubsetMask f : family) {
        if (f.empty()) {
            out << "-\n";
            continue;
        }
        bool first = true;
        for (int e : f.elements()) {
            out << (first ? "" : ",") << e;
            first = false;
        }
        out << '\n';
    }
}

std::string format_family(const Family& family) {
    std::ostringstream out;
    write_family(out, family);
    return out.str();
}

Family parse_family(std::string_view text) {
    std::vector<detail::Line> lines = detail::content_lines(text);
    if (lines.empty()) {
        throw ParseError(1, "missing header 'n=<k>'");
    }
    const auto& header = lines.front();
    if (header.text.substr(0, 2) != "n=") {
        throw ParseError(header.number, "expected header 'n=<k>', got '" + std::string(header.text) + "'");
    }
    const int n_value = detail::parse_int(header.text.substr(2), header.number);
    std::optional<GroundSize> n;
    try {
        n.emplace(n_value);
    } catch (const std::out_of_range& e) {
        throw ParseError(header.number, e.what());
    }

    std::vector<SubsetMask> members;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.text == "-") {
            members.emplace_back();
            continue;
        }
        std::uint32_t bits = 0;
        for (std::string_view token : detail::split(line.text, ',')) {
            const int e = detail::parse_int(detail::trim(token), line.number);
            if (e < 1 || e > n->value()) {
                throw ParseError(line.number, "element " + std::to_string(e) + " outside [1, " +
                                                  std::to_string(n->value()) + "]");
            }
            const std::uint32_t bit = 1u << (e - 1);
            if (bits & bit) {
                throw ParseError(line.number, "repeated element " + std::to_string(e));
            }
            bits |= bit;
        }
        members.emplace_back(bits);
    }
    const std::size_t listed = members.size();
    Family family(*n, std::move(members));
    if (family.size() != listed) {
        throw ParseError(header.number, "family lists a set more than once");
    }
    return family;
}

Family read_family(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_family(buffer.str());
}

Family load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open family file '" + path + "'");
    }
    return read_family(in);
}

}  // namespace knv
