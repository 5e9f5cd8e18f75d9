#include "knv/search.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "knv/constructions.hpp"
#include "knv/cycle_method.hpp"
#include "knv/freeness.hpp"

namespace knv {

namespace {

struct Candidate {
    ConstructionName name;
    int param = 0;
};

std::string source_name(const Candidate& c) {
    std::string s(to_string(c.name));
    switch (c.name) {
        case ConstructionName::MatchingExtremal:
        case ConstructionName::Threshold:
        case ConstructionName::CliqueThreshold:
            s += "(" + std::to_string(c.param) + ")";
            break;
        default:
            break;
    }
    return s;
}

bool is_clique(const PatternGraph& g) {
    const auto v = static_cast<std::size_t>(g.vertex_count());
    return g.edge_count() == v * (v - 1) / 2;
}

/// Constructions worth trying against g, in preference order for ties.
std::vector<Candidate> candidates_for(GroundSize n, const PatternGraph& g) {
    std::vector<Candidate> out{{ConstructionName::Star, 1}};
    if (g.edge_count() == 0) {
        return out;
    }
    if (is_perfect_matching(g)) {
        const int k = static_cast<int>(g.edge_count()) - 1;
        if (k >= 1 && k <= 7 && (std::uint64_t{1} << (n.value() - 1)) >= static_cast<std::uint64_t>(k)) {
            out.push_back({ConstructionName::MatchingExtremal, k});
        }
        return out;
    }
    if (const auto og = odd_girth(g)) {
        const int k = (*og - 1) / 2;
        if (k <= 7) {
            out.push_back({ConstructionName::Threshold, k});
        }
    }
    if (is_clique(g) && g.vertex_count() >= 2) {
        out.push_back({ConstructionName::CliqueThreshold, g.vertex_count() - 1});
    }
    if (g.max_degree() >= 2 && n.value() >= 2) {
        out.push_back({ConstructionName::BipLower, 0});
    }
    if (bipartition(g) && n.value() >= 3) {
        out.push_back({ConstructionName::E2TwoLevel, 0});
    }
    return out;
}

struct Seed {
    Family family;
    std::string source;
    bool verified = false;
};

/// Largest candidate family that is G-free; ties keep the earlier candidate.
Seed best_construction(GroundSize n, const PatternGraph& g, bool verify) {
    Seed best{Family(n), "", false};
    bool have = false;
    for (const Candidate& c : candidates_for(n, g)) {
        Family f = make_construction(c.name, n, c.param).family;
        if (have && f.size() <= best.family.size()) {
            continue;
        }
        if (verify && !is_free(f, g)) {
            continue;
        }
        best = Seed{std::move(f), source_name(c), verify};
        have = true;
    }
    return best;
}

/// Every complement pair holds at most one member of an M_{k+1}-free family, except for
/// at most k pairs that hold both (k + 1 doubled pairs span a copy of M_{k+1}).
CompletionBound complement_pair_bound(GroundSize n, std::size_t doubled_allowed) {
    return [n, doubled_allowed](std::span<const SubsetMask> chosen, std::span<const SubsetMask> remaining) {
        const std::uint32_t full = n.full_bits();
        std::vector<std::uint8_t> alive(std::size_t{1} << (n.value() - 1), 0);
        auto mark = [&](SubsetMask f) {
            const std::uint32_t rep = std::min(f.bits, full & ~f.bits);
            ++alive[rep];
        };
        for (SubsetMask f : chosen) {
            mark(f);
        }
        for (SubsetMask f : remaining) {
            mark(f);
        }
        std::size_t singles = 0;
        std::size_t doubles = 0;
        for (std::uint8_t a : alive) {
            singles += a > 0 ? 1 : 0;
            doubles += a > 1 ? 1 : 0;
        }
        return singles + std::min(doubles, doubled_allowed);
    };
}

}  // namespace

bool is_perfect_matching(const PatternGraph& g) {
    return g.edge_count() >= 1 && is_matching(g) &&
           static_cast<std::size_t>(g.vertex_count()) == 2 * g.edge_count();
}

VexResult vex_exact(GroundSize n, const PatternGraph& g, const SearchBudget& budget) {
    if (g.vertex_count() == 0) {
        throw std::invalid_argument("vex is undefined for the empty pattern");
    }
    if (n.value() > kMaxExactVexGround) {
        throw std::invalid_argument("vex_exact supports n <= " + std::to_string(kMaxExactVexGround));
    }
    const bool matching = is_perfect_matching(g);
    const bool unlimited = budget.max_nodes == 0 && budget.time_limit.count() == 0;
    if (n.value() > kMaxUnprunedVexGround && !matching && unlimited) {
        throw std::invalid_argument("vex_exact at n > 5 needs a node or time budget unless the pattern is a matching");
    }
    const auto start = std::chrono::steady_clock::now();

    Seed seed = best_construction(n, g, true);
    IncrementalChecker oracle(g);
    EngineOptions options;
    options.budget = budget;
    options.seed = seed.family;
    if (matching) {
        options.extra_bound = complement_pair_bound(n, g.edge_count() - 1);
    }
    EngineResult r = max_family_avoiding(Family::cube(n), oracle, options);

    if (!is_free(r.witness, g)) {
        throw std::logic_error("search returned a witness containing the pattern");
    }
    VexResult out;
    out.value = r.value;
    out.exact = r.exact;
    out.upper = r.upper_bound;
    out.nodes = r.nodes;
    out.lower_bound_source = r.witness == seed.family && !seed.source.empty() ? seed.source : "search";
    out.upper_bound_source = r.exact ? "search" : "search-partial";
    out.witness = std::move(r.witness);
    out.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return out;
}

VexBounds vex_bounds(GroundSize n, const PatternGraph& g) {
    if (g.vertex_count() == 0) {
        throw std::invalid_argument("vex is undefined for the empty pattern");
    }
    if (n.value() > kMaxBoundsGround) {
        throw std::invalid_argument("vex_bounds supports n <= " + std::to_string(kMaxBoundsGround));
    }
    const bool verify = n.value() <= kMaxVerifiedBoundsGround;
    VexBounds out;

    if (g.edge_count() == 0) {
        // Any v sets contain v isolated vertices.
        const BigCount cube = BigCount(1) << n.value();
        const BigCount v = g.vertex_count() - 1;
        out.lower = out.upper.emplace(std::min(cube, v));
        std::vector<SubsetMask> some;
        for (std::uint32_t b = 0; BigCount(some.size()) < out.lower; ++b) {
            some.emplace_back(b);
        }
        out.witness = Family(n, std::move(some));
        out.witness_verified = true;
        out.lower_source = out.upper_source = "edgeless";
        return out;
    }

    Seed seed = best_construction(n, g, verify);
    out.lower = seed.family.size();
    out.witness = std::move(seed.family);
    out.witness_verified = seed.verified;
    out.lower_source = seed.source;

    if (is_perfect_matching(g)) {
        out.upper = (BigCount(1) << (n.value() - 1)) + BigCount(g.edge_count() - 1);
        out.upper_source = "matching";
    } else if (const auto og = odd_girth(g)) {
        const int k = (*og - 1) / 2;
        BigCount upper = cycle_upper_bound(n, k);
        // Containing C_{2k+1} makes G harder to embed, so the C_{2k+1} bound carries over
        // only when G itself is that cycle.
        if (g.vertex_count() == *og && g.edge_count() == static_cast<std::size_t>(*og) && g.max_degree() == 2) {
            out.upper = std::move(upper);
            out.upper_source = "cycle_upper_bound(" + std::to_string(k) + ")";
        }
    }
    return out;
}

}  // namespace knv
