#pragma once

// Branch-and-bound maximization of a subfamily avoiding a monotone forbidden structure.
//
// Ground sets are branched on in order of level distance from n/2, then canonically;
// the include branch is explored first. The search is split into a fixed set of
// prefix subproblems that workers pull from a shared queue. The incumbent is an
// atomic (value, subproblem) key, so the returned witness is the same for every
// thread count when the search completes.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "knv/oracle.hpp"
#include "knv/sets.hpp"

namespace knv {

struct SearchBudget {
    /// 0 means unlimited.
    std::uint64_t max_nodes = 0;
    /// 0 means unlimited.
    std::chrono::milliseconds time_limit{0};
    /// Disabling turns the search into a plain enumeration of feasible subfamilies.
    bool bound_pruning = true;
    unsigned threads = 1;
};

/// Upper bound on the best total family size reachable from a node, given the sets
/// chosen so far and the sets still undecided.
using CompletionBound =
    std::function<std::size_t(std::span<const SubsetMask> chosen, std::span<const SubsetMask> remaining)>;

struct EngineOptions {
    /// Branch on complement pairs jointly; the ground family must be complement-closed.
    bool symmetric = false;
    SearchBudget budget{};
    /// Initial incumbent; must lie in the ground family and pass the oracle.
    std::optional<Family> seed;
    CompletionBound extra_bound;
};

struct EngineResult {
    std::size_t value = 0;
    Family witness;
    bool exact = false;
    /// Certified upper bound: equals value when exact.
    std::size_t upper_bound = 0;
    std::uint64_t nodes = 0;
};

/// Throws std::invalid_argument for an invalid seed or a non-closed ground in symmetric mode.
[[nodiscard]] EngineResult max_family_avoiding(const Family& ground, const FamilyOracle& oracle,
                                               const EngineOptions& options = {});

/// Ground sets in branching order: by |2|F| - n|, then by bitmask.
[[nodiscard]] std::vector<SubsetMask> branching_order(const Family& ground);

}  // namespace knv
