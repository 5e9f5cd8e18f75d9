#include "knv/constructions.hpp"

#include <stdexcept>

namespace knv {

namespace {

Family filter_cube(GroundSize n, auto&& keep) {
    std::vector<SubsetMask> out;
    for (std::uint64_t b = 0; b < n.cube_size(); ++b) {
        const SubsetMask f{static_cast<std::uint32_t>(b)};
        if (keep(f)) {
            out.push_back(f);
        }
    }
    return Family(n, std::move(out));
}

BigCount half_cube(GroundSize n) { return BigCount{1} << (n.value() - 1); }

BigCount full_cube(GroundSize n) { return BigCount{1} << n.value(); }

}  // namespace

Family star_family(GroundSize n, int x) {
    if (x < 1 || x > n.value()) {
        throw std::invalid_argument("star element " + std::to_string(x) + " outside [1, " +
                                    std::to_string(n.value()) + "]");
    }
    return filter_cube(n, [x](SubsetMask f) { return f.contains(x); });
}

Family matching_extremal(GroundSize n, int k) {
    if (k < 0 || static_cast<std::uint64_t>(k) > n.cube_size() / 2) {
        throw std::invalid_argument("matching_extremal: k must be in [0, 2^(n-1)]");
    }
    const Family star = star_family(n, 1);
    std::vector<SubsetMask> members = star.members();
    for (int i = 0; i < k; ++i) {
        members.push_back(complement(star[static_cast<std::size_t>(i)], n));
    }
    return Family(n, std::move(members));
}

Family bip_lower(GroundSize n) {
    const int nv = n.value();
    if (nv < 2) {
        throw std::invalid_argument("bip_lower needs n >= 2");
    }
    return filter_cube(n, [nv](SubsetMask f) {
        const int s = f.size();
        if (2 * s > nv) {
            return true;
        }
        if (nv % 2 == 0) {
            return 2 * s == nv;
        }
        return s == nv / 2 && f.contains(1);
    });
}

Family threshold_family(GroundSize n, int k) {
    if (k < 1) {
        throw std::invalid_argument("threshold_family needs k >= 1");
    }
    const long long nv = n.value();
    return filter_cube(n, [=](SubsetMask f) { return static_cast<long long>(f.size()) * (2 * k + 1) > k * nv; });
}

Family clique_threshold_family(GroundSize n, int r) {
    if (r < 1) {
        throw std::invalid_argument("clique_threshold_family needs r >= 1");
    }
    const int nv = n.value();
    return filter_cube(n, [=](SubsetMask f) { return f.size() * (r + 1) > nv; });
}

Family e2_generating_family(GroundSize n) {
    const int nv = n.value();
    if (nv < 3) {
        throw std::invalid_argument("e2_two_level needs n >= 3");
    }
    if (nv % 2 == 1) {
        return level_slice(n, nv / 2, nv / 2 + 1);
    }
    const int half = nv / 2;
    return filter_cube(n, [half](SubsetMask f) {
        const int s = f.size();
        return f.contains(1) ? (s == half - 1 || s == half) : (s == half || s == half + 1);
    });
}

Family e2_two_level(GroundSize n) { return upset(e2_generating_family(n)); }

std::string_view to_string(ConstructionName name) {
    switch (name) {
        case ConstructionName::Star:
            return "star";
        case ConstructionName::MatchingExtremal:
            return "matching_extremal";
        case ConstructionName::BipLower:
            return "bip_lower";
        case ConstructionName::Threshold:
            return "threshold";
        case ConstructionName::CliqueThreshold:
            return "clique_threshold";
        case ConstructionName::E2TwoLevel:
            return "e2_two_level";
    }
    return "unknown";
}

ConstructionName parse_construction_name(std::string_view name) {
    for (auto c : {ConstructionName::Star, ConstructionName::MatchingExtremal, ConstructionName::BipLower,
                   ConstructionName::Threshold, ConstructionName::CliqueThreshold, ConstructionName::E2TwoLevel}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    throw std::invalid_argument("unknown construction '" + std::string(name) + "'");
}

BigCount construction_size_formula(ConstructionName name, GroundSize n, int param) {
    const int nv = n.value();
    switch (name) {
        case ConstructionName::Star:
            return half_cube(n);
        case ConstructionName::MatchingExtremal:
            return half_cube(n) + param;
        case ConstructionName::BipLower:
            if (nv % 2 == 0) {
                return half_cube(n) + binomial(nv, nv / 2) / 2;
            }
            return half_cube(n) + binomial(nv - 1, nv / 2 - 1);
        case ConstructionName::Threshold:
            return full_cube(n) - binom_tail(n, param * nv / (2 * param + 1), TailDirection::AtMost);
        case ConstructionName::CliqueThreshold:
            return full_cube(n) - binom_tail(n, nv / (param + 1), TailDirection::AtMost);
        case ConstructionName::E2TwoLevel: {
            if (nv % 2 == 1) {
                return half_cube(n) + binomial(nv, nv / 2);
            }
            // Sets containing 1 of size >= n/2 - 1, plus sets avoiding 1 of size >= n/2.
            BigCount total = 0;
            for (int i = nv / 2 - 2; i <= nv - 1; ++i) {
                total += binomial(nv - 1, i);
            }
            for (int i = nv / 2; i <= nv - 1; ++i) {
                total += binomial(nv - 1, i);
            }
            return total;
        }
    }
    throw std::invalid_argument("unknown construction");
}

NamedConstruction make_construction(ConstructionName name, GroundSize n, int param) {
    NamedConstruction c{.name = name, .n = n.value(), .param = param, .family = Family(n), .claimed_size = 0, .claimed_free_of = PatternGraph(0, {}), .claimed_free_of_name = ""};
    switch (name) {
        case ConstructionName::Star:
            c.family = star_family(n, param);
            c.claimed_free_of = matching(1);
            c.claimed_free_of_name = "K2";
            break;
        case ConstructionName::MatchingExtremal:
            if (param + 1 > kMaxPatternVertices / 2) {
                throw std::invalid_argument("matching_extremal: k must be at most 7");
            }
            c.family = matching_extremal(n, param);
            c.claimed_free_of = matching(param + 1);
            c.claimed_free_of_name = "M" + std::to_string(param + 1);
            break;
        case ConstructionName::BipLower:
            // Max degree <= 1 is exactly P3-freeness.
            c.family = bip_lower(n);
            c.claimed_free_of = path(3);
            c.claimed_free_of_name = "P3";
            break;
        case ConstructionName::Threshold:
            if (2 * param + 1 > kMaxPatternVertices) {
                throw std::invalid_argument("threshold: k must be at most 7");
            }
            c.family = threshold_family(n, param);
            c.claimed_free_of = cycle(2 * param + 1);
            c.claimed_free_of_name = "C" + std::to_string(2 * param + 1);
            break;
        case ConstructionName::CliqueThreshold:
            if (param + 1 > kMaxPatternVertices) {
                throw std::invalid_argument("clique_threshold: r must be at most 15");
            }
            c.family = clique_threshold_family(n, param);
            c.claimed_free_of = clique(param + 1);
            c.claimed_free_of_name = "K" + std::to_string(param + 1);
            break;
        case ConstructionName::E2TwoLevel:
            c.family = e2_two_level(n);
            c.claimed_free_of = cycle(4);
            c.claimed_free_of_name = "C4";
            break;
    }
    c.claimed_size = construction_size_formula(name, n, param);
    if (BigCount(c.family.size()) != c.claimed_size) {
        throw std::logic_error(std::string(to_string(name)) + ": generated " + std::to_string(c.family.size()) +
                               " sets but the size formula gives " + c.claimed_size.str());
    }
    return c;
}

ConstructionVerdict verify_construction(const NamedConstruction& c) {
    ConstructionVerdict v;
    v.size_matches = BigCount(c.family.size()) == c.claimed_size;
    v.witness = contains_subgraph(induced_kneser(c.family), c.claimed_free_of);
    v.free = !v.witness.has_value();
    return v;
}

}  // namespace knv
