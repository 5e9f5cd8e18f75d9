#include "knv/cycle_method.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "knv/freeness.hpp"
#include "knv/log_bounds.hpp"
#include "knv/patterns.hpp"

namespace knv {

CyclicPerm::CyclicPerm(std::vector<int> order) : order_(std::move(order)) {
    const int n = static_cast<int>(order_.size());
    if (n < 1 || n > kMaxGroundSize) {
        throw std::invalid_argument("cyclic permutation length must be in [1, 30]");
    }
    std::vector<int> sorted = order_;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i) {
        if (sorted[static_cast<std::size_t>(i)] != i + 1) {
            throw std::invalid_argument("not a permutation of [n]");
        }
    }
    std::rotate(order_.begin(), std::find(order_.begin(), order_.end(), 1), order_.end());
    position_.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        position_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)] - 1)] = i;
    }
}

CyclicPerm CyclicPerm::identity(GroundSize n) {
    std::vector<int> order(static_cast<std::size_t>(n.value()));
    std::iota(order.begin(), order.end(), 1);
    return CyclicPerm(std::move(order));
}

int CyclicPerm::at(long long i) const {
    const long long n = this->n();
    const long long idx = (((i - 1) % n) + n) % n;
    return order_[static_cast<std::size_t>(idx)];
}

void for_each_cyclic_perm(GroundSize n, const std::function<void(const CyclicPerm&)>& fn) {
    std::vector<int> order(static_cast<std::size_t>(n.value()));
    std::iota(order.begin(), order.end(), 1);
    do {
        fn(CyclicPerm(order));
    } while (std::next_permutation(order.begin() + 1, order.end()));
}

SubsetMask IntervalSpec::mask(const CyclicPerm& pi) const {
    if (length < 1 || length > pi.n() || start < 1 || start > pi.n()) {
        throw std::invalid_argument("interval spec out of range");
    }
    std::uint32_t bits = 0;
    for (int t = 0; t < length; ++t) {
        bits |= 1u << (pi.at(start + t) - 1);
    }
    return SubsetMask{bits};
}

namespace {

/// Bit p-1 set iff pi(p) is in s.
std::uint32_t position_bits(SubsetMask s, const CyclicPerm& pi) {
    std::uint32_t bits = 0;
    for (int e : s.elements()) {
        bits |= 1u << (pi.position_of(e) - 1);
    }
    return bits;
}

/// Positions p (0-based) that start a run: p in the set, p-1 (cyclically) not.
std::uint32_t run_starts(std::uint32_t positions, int n) {
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
    const std::uint32_t prev = ((positions << 1) | (positions >> (n - 1))) & full;
    return positions & ~prev;
}

}  // namespace

bool is_interval(SubsetMask s, const CyclicPerm& pi) {
    if (s.empty()) {
        throw std::invalid_argument("the empty set is not an interval");
    }
    const int n = pi.n();
    if (!s.valid_for(GroundSize(n))) {
        throw std::invalid_argument("set is not a subset of [n]");
    }
    if (s.size() == n) {
        return true;
    }
    return std::popcount(run_starts(position_bits(s, pi), n)) == 1;
}

std::optional<IntervalSpec> interval_spec(SubsetMask s, const CyclicPerm& pi) {
    if (s.empty() || !is_interval(s, pi)) {
        return std::nullopt;
    }
    if (s.size() == pi.n()) {
        return IntervalSpec{1, pi.n()};
    }
    const std::uint32_t starts = run_starts(position_bits(s, pi), pi.n());
    return IntervalSpec{std::countr_zero(starts) + 1, s.size()};
}

Family restrict_to_intervals(const Family& family, const CyclicPerm& pi) {
    if (family.ground().value() != pi.n()) {
        throw std::invalid_argument("permutation and family use different ground sets");
    }
    std::vector<SubsetMask> out;
    for (SubsetMask f : family) {
        if (!f.empty() && is_interval(f, pi)) {
            out.push_back(f);
        }
    }
    return Family(family.ground(), std::move(out));
}

BigCount weight(GroundSize n, SubsetMask f) { return binomial(n.value(), f.size()); }

BigCount family_weight(const Family& family) {
    BigCount total = 0;
    for (SubsetMask f : family) {
        total += weight(family.ground(), f);
    }
    return total;
}

DoubleCount double_count_check(const Family& family, unsigned threads) {
    const GroundSize n = family.ground();
    if (n.value() > kMaxDoubleCountGround) {
        throw std::invalid_argument("double_count_check enumerates (n-1)! permutations; n must be <= 7");
    }
    const SubsetMask full{n.full_bits()};
    if (family.contains(SubsetMask{}) || family.contains(full)) {
        throw std::invalid_argument("double_count_check needs the empty set and [n] to be absent");
    }
    DoubleCount result;
    result.rhs = BigCount(family.size()) * factorial(n.value());

    // Weights per level, so the inner loop only adds precomputed values.
    std::vector<BigCount> level_weight(static_cast<std::size_t>(n.value()) + 1);
    for (int i = 0; i <= n.value(); ++i) {
        level_weight[static_cast<std::size_t>(i)] = binomial(n.value(), i);
    }

    auto sum_chunk = [&](int second) {
        // All canonical permutations with pi(2) = second (or the single one for n = 1).
        std::vector<int> order{1};
        if (n.value() > 1) {
            order.push_back(second);
        }
        for (int e = 2; e <= n.value(); ++e) {
            if (e != second) {
                order.push_back(e);
            }
        }
        BigCount sum = 0;
        const auto rest = order.begin() + std::min<std::ptrdiff_t>(2, static_cast<std::ptrdiff_t>(order.size()));
        do {
            const CyclicPerm pi(order);
            for (SubsetMask f : family) {
                if (is_interval(f, pi)) {
                    sum += level_weight[static_cast<std::size_t>(f.size())];
                }
            }
        } while (std::next_permutation(rest, order.end()));
        return sum;
    };

    const int chunks = std::max(1, n.value() - 1);
    std::vector<BigCount> partial(static_cast<std::size_t>(chunks));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
            partial[static_cast<std::size_t>(c)] = sum_chunk(c + 2);
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < std::max(1u, threads); ++t) {
            pool.emplace_back(work);
        }
        work();
    }
    result.lhs = std::accumulate(partial.begin(), partial.end(), BigCount{0});
    result.equal = result.lhs == result.rhs;
    return result;
}

int cycle_level(GroundSize n, int k) { return k * n.value() / (2 * k + 1); }

bool j_in_domain(GroundSize n, int k, int j) {
    return k >= 1 && j >= 0 && static_cast<long long>(j) * (2 * k + 1) <= static_cast<long long>(k) * n.value();
}

int m_of_j(GroundSize n, int k, int j) {
    if (k < 1) {
        throw std::invalid_argument("m_of_j needs k >= 1");
    }
    if (!j_in_domain(n, k, j)) {
        throw std::invalid_argument("j=" + std::to_string(j) + " outside [0, kn/(2k+1)]");
    }
    const long long slack = static_cast<long long>(k) * n.value() - cycle_level(n, k) + j;
    return static_cast<int>(slack / (2LL * k));
}

std::vector<SubsetMask> shift_image(const IntervalSpec& f, const CyclicPerm& pi, int k) {
    const GroundSize n(pi.n());
    const int j = cycle_level(n, k) - f.length;
    if (!j_in_domain(n, k, j)) {
        throw std::invalid_argument("interval length " + std::to_string(f.length) +
                                    " does not correspond to an admissible j");
    }
    const int m = m_of_j(n, k, j);
    const SubsetMask base = f.mask(pi);
    if (m < 1) {
        throw CycleShapeError("m(j) = 0 at n=" + std::to_string(n.value()));
    }
    std::vector<SubsetMask> image;
    std::vector<SubsetMask> cycle_sets{base};
    long long next_start = f.start + f.length;
    for (int i = 0; i < 2 * k; ++i) {
        const int start = static_cast<int>((next_start - 1) % n.value()) + 1;
        const SubsetMask s = IntervalSpec{start, m}.mask(pi);
        image.push_back(s);
        cycle_sets.push_back(s);
        next_start += m;
    }
    if (!is_graph_copy(cycle_sets, cycle(2 * k + 1))) {
        throw CycleShapeError("shift image does not close a C_" + std::to_string(2 * k + 1) + " at n=" +
                              std::to_string(n.value()) + ", j=" + std::to_string(j));
    }
    return image;
}

int cycle_shift_constant(int k) {
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1");
    }
    return static_cast<int>(ceil_scaled_log(2LL * (k + 1), 2LL * k));
}

int half_shift_constant(int k) {
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1");
    }
    return static_cast<int>(ceil_scaled_log(k + 1LL, 2LL * k));
}

BigCount cycle_upper_bound(GroundSize n, int k) {
    const long long kn = static_cast<long long>(k) * n.value();
    const long long ceil_level = (kn + 2 * k) / (2 * k + 1);
    const long long start = std::max(0LL, ceil_level - cycle_shift_constant(k));
    return binom_tail(n, static_cast<int>(start), TailDirection::AtLeast);
}

BigCount threshold_lower_bound(GroundSize n, int k) {
    return (BigCount{1} << n.value()) - binom_tail(n, cycle_level(n, k), TailDirection::AtMost);
}

MissingImageReport missing_image_check(const Family& intervals, const CyclicPerm& pi, int k) {
    const GroundSize n = intervals.ground();
    if (n.value() != pi.n()) {
        throw std::invalid_argument("permutation and family use different ground sets");
    }
    for (SubsetMask g : intervals) {
        if (g.empty() || !is_interval(g, pi)) {
            throw std::invalid_argument("member " + to_string(g) + " is not an interval of the permutation");
        }
    }
    if (!is_free(intervals, cycle(2 * k + 1))) {
        throw std::invalid_argument("family is not C_" + std::to_string(2 * k + 1) + "-free");
    }
    MissingImageReport report;
    const int z = cycle_level(n, k);
    for (SubsetMask g : intervals) {
        if (g.size() > z) {
            continue;
        }
        std::vector<SubsetMask> image;
        try {
            image = shift_image(*interval_spec(g, pi), pi, k);
        } catch (const CycleShapeError&) {
            ++report.skipped;
            continue;
        }
        ++report.checked;
        const bool all_present =
            std::all_of(image.begin(), image.end(), [&](SubsetMask s) { return intervals.contains(s); });
        if (all_present && report.holds) {
            report.holds = false;
            report.counterexample = g;
        }
    }
    return report;
}

}  // namespace knv
