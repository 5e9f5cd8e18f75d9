#pragma once

// vex(n, G): the largest family of subsets of [n] whose induced Kneser graph is G-free.

#include <chrono>
#include <optional>
#include <string>

#include "knv/engine.hpp"
#include "knv/patterns.hpp"
#include "knv/sets.hpp"

namespace knv {

/// Largest n vex_exact accepts. Beyond 5 an unlimited budget is only allowed for
/// matchings, whose complement-pair bound closes the search at the root.
inline constexpr int kMaxExactVexGround = 12;
inline constexpr int kMaxUnprunedVexGround = 5;

struct VexResult {
    BigCount value;
    /// G-free, re-verified; |witness| == value.
    Family witness{GroundSize(1)};
    bool exact = false;
    /// Certified upper bound; equals value when exact.
    BigCount upper;
    /// Where the best lower bound came from: a construction name or "search".
    std::string lower_bound_source;
    /// "search" when the search completed, else "search-partial".
    std::string upper_bound_source;
    std::uint64_t nodes = 0;
    std::chrono::milliseconds elapsed{0};
};

/// Exact maximum by branch-and-bound, seeded with the best verified construction.
/// Throws std::invalid_argument for an empty pattern, n > 12, or n > 5 with an unlimited
/// budget and a pattern that is not a perfect matching. With an exhausted budget the result
/// has exact=false and a certified upper bound.
[[nodiscard]] VexResult vex_exact(GroundSize n, const PatternGraph& g, const SearchBudget& budget = {});

struct VexBounds {
    BigCount lower;
    /// Verified G-free whenever witness_verified is true; verification is skipped above
    /// kMaxVerifiedBoundsGround to keep the call cheap.
    Family witness{GroundSize(1)};
    bool witness_verified = false;
    std::string lower_source;
    std::optional<BigCount> upper;
    std::string upper_source;
};

inline constexpr int kMaxVerifiedBoundsGround = 14;
/// Witness families are materialized, so the cube must stay small enough to enumerate.
inline constexpr int kMaxBoundsGround = 20;

/// Construction lower bounds and closed-form upper bounds:
///   perfect matchings M_{k+1}: 2^(n-1) + k on both sides;
///   odd girth 2k+1: threshold family below, cycle_upper_bound above;
///   otherwise the best verified construction and no upper bound.
/// Throws std::invalid_argument for an empty pattern or n > kMaxBoundsGround.
[[nodiscard]] VexBounds vex_bounds(GroundSize n, const PatternGraph& g);

/// True iff g is a nonempty perfect matching (k+1 disjoint edges, no isolated vertices).
[[nodiscard]] bool is_perfect_matching(const PatternGraph& g);

}  // namespace knv
