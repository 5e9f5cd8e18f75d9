#pragma once

// The knv subcommands as plain functions, so tests can drive them without a process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "knv/cli/report.hpp"
#include "knv/sets.hpp"

namespace knv::cli {

struct CommandResult {
    RunReport report;
    /// Every verification in the run passed; drives the exit code.
    bool passed = false;
    /// CSV body for table-style output; empty for JSON commands.
    std::string csv;
};

/// Inclusive n range parsed from "a..b" or a single "a".
struct NRange {
    int lo = 0;
    int hi = 0;
};
/// Throws std::invalid_argument on malformed input or lo > hi.
[[nodiscard]] NRange parse_n_range(const std::string& text);

struct VexArgs {
    int n = 0;
    std::string pattern;
    bool bounds = false;
    /// Seconds; 0 means unlimited.
    double timeout = 0;
    std::uint64_t max_nodes = 0;
    unsigned threads = 1;
};
[[nodiscard]] CommandResult cmd_vex(const VexArgs& args);

struct TableArgs {
    std::string pattern;
    std::string n_range;
    /// Run vex_exact for n up to this value when bounds do not meet; 0 disables it.
    int exact_max = 0;
    double timeout = 0;
    unsigned threads = 1;
};
[[nodiscard]] CommandResult cmd_table(const TableArgs& args);

struct LaArgs {
    int n = 0;
    std::vector<std::string> posets;
    bool symmetric = false;
    double timeout = 0;
    std::uint64_t max_nodes = 0;
    unsigned threads = 1;
};
[[nodiscard]] CommandResult cmd_la(const LaArgs& args);

struct EposetArgs {
    std::string poset;
    int n_max = 8;
};
[[nodiscard]] CommandResult cmd_eposet(const EposetArgs& args);

struct VerifyArgs {
    std::string construction;
    int n = 0;
    std::optional<int> k;
    std::optional<int> r;
    std::optional<int> x;
};
[[nodiscard]] CommandResult cmd_verify(const VerifyArgs& args);

struct CyclecheckArgs {
    int n = 0;
    /// A family file, or "random" for a seeded family avoiding the empty set and [n].
    std::string family = "random";
    std::uint64_t seed = 0;
    unsigned threads = 1;
};
[[nodiscard]] CommandResult cmd_cyclecheck(const CyclecheckArgs& args);

struct BoundsArgs {
    std::string pattern;
    std::string n_range;
    bool csv = false;
};
[[nodiscard]] CommandResult cmd_bounds(const BoundsArgs& args);

/// Seeded family of subsets of [n] with 0 < |F| < n, each kept with probability 1/2.
[[nodiscard]] Family random_proper_family(GroundSize n, std::uint64_t seed);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace knv::cli
