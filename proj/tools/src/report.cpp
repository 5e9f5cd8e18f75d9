#include "knv/cli/report.hpp"

namespace knv::cli {

Json to_json(const RunReport& report) {
    Json j;
    j["command"] = report.command;
    j["params"] = report.params;
    j["results"] = report.results;
    j["elapsed_ms"] = report.elapsed_ms;
    j["toolkit_version"] = report.toolkit_version;
    return j;
}

RunReport report_from_json(const Json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.params = j.at("params").get<std::map<std::string, std::string>>();
    r.results = j.at("results");
    r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
    r.toolkit_version = j.at("toolkit_version").get<std::string>();
    return r;
}

}  // namespace knv::cli
