#pragma once

// Machine-readable record of one CLI run.

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

namespace knv::cli {

using Json = nlohmann::ordered_json;

struct RunReport {
    std::string command;
    /// Every option as given (or defaulted), stringified.
    std::map<std::string, std::string> params;
    /// Deterministic for fixed params; big integers are decimal strings.
    Json results = Json::object();
    std::int64_t elapsed_ms = 0;
    std::string toolkit_version;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

[[nodiscard]] Json to_json(const RunReport& report);
/// Throws nlohmann::json::exception on missing or mistyped fields.
[[nodiscard]] RunReport report_from_json(const Json& j);

}  // namespace knv::cli
