#pragma once

// Brute-force reference implementations. They share only plain data with the library
// (bitmasks, edge lists, relation lists) and recompute everything naively.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "knv/patterns.hpp"
#include "knv/posets.hpp"
#include "knv/sets.hpp"

namespace oracle {

using Masks = std::vector<std::uint32_t>;

inline Masks masks_of(const knv::Family& f) {
    Masks out;
    for (knv::SubsetMask s : f) {
        out.push_back(s.bits);
    }
    return out;
}

inline bool disjoint_distinct(std::uint32_t a, std::uint32_t b) { return a != b && (a & b) == 0; }

/// Calls fn on every injection of k slots into m hosts; stops when fn returns true.
inline bool any_injection(int k, std::size_t m, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
    if (static_cast<std::size_t>(k) > m) {
        return false;
    }
    std::vector<std::size_t> pick(static_cast<std::size_t>(k));
    std::vector<char> used(m, 0);
    std::function<bool(int)> rec = [&](int depth) {
        if (depth == k) {
            return fn(pick);
        }
        for (std::size_t h = 0; h < m; ++h) {
            if (used[h]) {
                continue;
            }
            used[h] = 1;
            pick[static_cast<std::size_t>(depth)] = h;
            const bool hit = rec(depth + 1);
            used[h] = 0;
            if (hit) {
                return true;
            }
        }
        return false;
    };
    return rec(0);
}

/// Some injection maps every pattern edge onto a disjoint pair.
inline bool contains_graph(const Masks& host, int vertices, const std::vector<std::pair<int, int>>& edges) {
    return any_injection(vertices, host.size(), [&](const std::vector<std::size_t>& map) {
        for (auto [u, v] : edges) {
            if (!disjoint_distinct(host[map[static_cast<std::size_t>(u)]], host[map[static_cast<std::size_t>(v)]])) {
                return false;
            }
        }
        return true;
    });
}

inline bool contains_graph(const knv::Family& f, const knv::PatternGraph& g) {
    return contains_graph(masks_of(f), g.vertex_count(), g.edges());
}

/// Some injection maps every relation p < q to a proper inclusion.
inline bool contains_poset(const Masks& host, int size, const std::vector<std::pair<int, int>>& relations) {
    return any_injection(size, host.size(), [&](const std::vector<std::size_t>& map) {
        for (auto [p, q] : relations) {
            const std::uint32_t a = host[map[static_cast<std::size_t>(p)]];
            const std::uint32_t b = host[map[static_cast<std::size_t>(q)]];
            if (a == b || (a & ~b) != 0) {
                return false;
            }
        }
        return true;
    });
}

inline bool contains_poset(const knv::Family& f, const knv::Poset& p) {
    return contains_poset(masks_of(f), p.size(), p.relations());
}

/// Family from the bits of `code`: subset b of [n] is in iff bit b of code is set.
inline knv::Family family_from_code(int n, std::uint64_t code) {
    std::vector<knv::SubsetMask> members;
    for (std::uint32_t b = 0; b < (1u << n); ++b) {
        if ((code >> b) & 1u) {
            members.emplace_back(b);
        }
    }
    return knv::Family(knv::GroundSize(n), std::move(members));
}

/// max |F| over all 2^(2^n) families with pred(F); n <= 4.
inline std::size_t max_over_all_families(int n, const std::function<bool(const knv::Family&)>& pred) {
    const std::uint64_t count = std::uint64_t{1} << (1u << n);
    std::size_t best = 0;
    for (std::uint64_t code = 0; code < count; ++code) {
        const auto size = static_cast<std::size_t>(std::popcount(code));
        if (size <= best) {
            continue;
        }
        if (pred(family_from_code(n, code))) {
            best = size;
        }
    }
    return best;
}

/// Maximum matching in the Kneser graph on host, by plain recursion.
inline int matching_number(const Masks& host) {
    std::function<int(std::uint64_t)> rec = [&](std::uint64_t alive) -> int {
        if (alive == 0) {
            return 0;
        }
        const int i = std::countr_zero(alive);
        const std::uint64_t rest = alive & ~(std::uint64_t{1} << i);
        int best = rec(rest);
        for (std::uint64_t r = rest; r != 0; r &= r - 1) {
            const int j = std::countr_zero(r);
            if (disjoint_distinct(host[static_cast<std::size_t>(i)], host[static_cast<std::size_t>(j)])) {
                best = std::max(best, 1 + rec(rest & ~(std::uint64_t{1} << j)));
            }
        }
        return best;
    };
    const std::uint64_t all = host.size() >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << host.size()) - 1);
    return rec(all);
}

/// Pascal's triangle.
inline std::vector<std::vector<knv::BigCount>> pascal(int n_max) {
    std::vector<std::vector<knv::BigCount>> t(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        auto& row = t[static_cast<std::size_t>(n)];
        row.assign(static_cast<std::size_t>(n) + 1, 1);
        for (int k = 1; k < n; ++k) {
            row[static_cast<std::size_t>(k)] =
                t[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)] +
                t[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
        }
    }
    return t;
}

/// S is a cyclic run of `order` (a permutation of 1..n): try every start and length.
inline bool cyclic_run(std::uint32_t s, const std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    for (int start = 0; start < n; ++start) {
        std::uint32_t acc = 0;
        for (int len = 1; len <= n; ++len) {
            acc |= 1u << (order[static_cast<std::size_t>((start + len - 1) % n)] - 1);
            if (acc == s) {
                return true;
            }
        }
    }
    return false;
}

/// Distinct cyclic orders of [n], found by canonicalizing all n! linear orders.
inline std::vector<std::vector<int>> cyclic_orders(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::vector<std::vector<int>> out;
    do {
        std::vector<int> c = order;
        std::rotate(c.begin(), std::find(c.begin(), c.end(), 1), c.end());
        out.push_back(std::move(c));
    } while (std::next_permutation(order.begin(), order.end()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Largest m with z - j + 2km <= kn, by counting up.
inline int m_by_search(int n, int k, int j) {
    const int z = k * n / (2 * k + 1);
    int m = 0;
    while (z - j + 2 * k * (m + 1) <= k * n) {
        ++m;
    }
    return m;
}

}  // namespace oracle
