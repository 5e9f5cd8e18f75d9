#pragma once

// Extremal families for vertex Turán problems in the Kneser cube, each paired with an
// exact size formula and the pattern it claims to avoid.

#include <optional>
#include <string>
#include <string_view>

#include "knv/freeness.hpp"
#include "knv/patterns.hpp"
#include "knv/sets.hpp"

namespace knv {

/// All sets containing x; intersecting, so Kn_n induces no edge.
[[nodiscard]] Family star_family(GroundSize n, int x);

/// Star at element 1 plus the complements of its k smallest members (by bitmask).
/// Exactly k complement pairs are doubled, so the induced graph is M_k plus isolated vertices.
[[nodiscard]] Family matching_extremal(GroundSize n, int k);

/// Even n: sets of size >= n/2. Odd n: sets of size > n/2 plus the floor(n/2)-sets
/// containing 1. The induced graph has maximum degree at most 1.
[[nodiscard]] Family bip_lower(GroundSize n);

/// Sets with |F| > kn/(2k+1); C_{2k+1}-free.
[[nodiscard]] Family threshold_family(GroundSize n, int k);

/// Sets with |F| > n/(r+1); K_{r+1}-free.
[[nodiscard]] Family clique_threshold_family(GroundSize n, int r);

/// The generating two-level family: for odd n the two middle levels; for even n the
/// sets containing 1 of size n/2-1 or n/2 and the sets avoiding 1 of size n/2 or n/2+1.
[[nodiscard]] Family e2_generating_family(GroundSize n);

/// Upset of e2_generating_family(n).
[[nodiscard]] Family e2_two_level(GroundSize n);

enum class ConstructionName { Star, MatchingExtremal, BipLower, Threshold, CliqueThreshold, E2TwoLevel };

[[nodiscard]] std::string_view to_string(ConstructionName name);
/// Accepts "star", "matching_extremal", "bip_lower", "threshold", "clique_threshold", "e2_two_level".
[[nodiscard]] ConstructionName parse_construction_name(std::string_view name);

struct NamedConstruction {
    ConstructionName name;
    int n = 0;
    /// x for star, k for matching_extremal / threshold, r for clique_threshold; unused otherwise.
    int param = 0;
    Family family;
    BigCount claimed_size;
    /// Pattern the family claims to avoid, and its CLI name.
    PatternGraph claimed_free_of;
    std::string claimed_free_of_name;
};

/// Closed-form size of each construction, in exact arithmetic.
[[nodiscard]] BigCount construction_size_formula(ConstructionName name, GroundSize n, int param);

/// Runs the generator and checks |family| against the formula; a mismatch throws
/// std::logic_error. Parameter errors throw std::invalid_argument.
[[nodiscard]] NamedConstruction make_construction(ConstructionName name, GroundSize n, int param = 0);

struct ConstructionVerdict {
    bool size_matches = false;
    bool free = false;
    /// Copy of the claimed-forbidden pattern, when freeness fails.
    std::optional<GraphWitness> witness;
    [[nodiscard]] bool passed() const noexcept { return size_matches && free; }
};

[[nodiscard]] ConstructionVerdict verify_construction(const NamedConstruction& c);

}  // namespace knv
