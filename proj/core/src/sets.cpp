#include "knv/sets.hpp"

#include <algorithm>

namespace knv {

SubsetMask SubsetMask::of(std::initializer_list<int> elements) {
    return of(std::span<const int>(elements.begin(), elements.size()));
}

SubsetMask SubsetMask::of(std::span<const int> elements) {
    std::uint32_t bits = 0;
    for (int e : elements) {
        if (e < 1 || e > kMaxGroundSize) {
            throw std::out_of_range("set element out of range: " + std::to_string(e));
        }
        bits |= 1u << (e - 1);
    }
    return SubsetMask{bits};
}

std::vector<int> SubsetMask::elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint32_t b = bits; b != 0; b &= b - 1) {
        out.push_back(std::countr_zero(b) + 1);
    }
    return out;
}

Family::Family(GroundSize n, std::vector<SubsetMask> members) : n_(n), members_(std::move(members)) {
    for (SubsetMask f : members_) {
        if (!f.valid_for(n_)) {
            throw std::invalid_argument("set " + to_string(f) + " is not a subset of [" +
                                        std::to_string(n_.value()) + "]");
        }
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Family Family::cube(GroundSize n) {
    std::vector<SubsetMask> all;
    all.reserve(n.cube_size());
    for (std::uint64_t b = 0; b < n.cube_size(); ++b) {
        all.emplace_back(static_cast<std::uint32_t>(b));
    }
    Family f(n);
    f.members_ = std::move(all);
    return f;
}

bool Family::contains(SubsetMask f) const noexcept {
    return std::binary_search(members_.begin(), members_.end(), f);
}

std::size_t Family::index_of(SubsetMask f) const noexcept {
    auto it = std::lower_bound(members_.begin(), members_.end(), f);
    if (it == members_.end() || *it != f) {
        return members_.size();
    }
    return static_cast<std::size_t>(it - members_.begin());
}

bool Family::subset_of(const Family& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

bool Family::complement_closed() const {
    return std::all_of(members_.begin(), members_.end(),
                       [&](SubsetMask f) { return contains(complement(f, n_)); });
}

Family Family::united(const Family& other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("family union over different ground sets");
    }
    Family out(n_);
    std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                   std::back_inserter(out.members_));
    return out;
}

Family Family::intersected(const Family& other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("family intersection over different ground sets");
    }
    Family out(n_);
    std::set_intersection(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                          std::back_inserter(out.members_));
    return out;
}

Family family_complement(const Family& family) {
    std::vector<SubsetMask> out;
    out.reserve(family.size());
    for (SubsetMask f : family) {
        out.push_back(complement(f, family.ground()));
    }
    return Family(family.ground(), std::move(out));
}

Family level_slice(GroundSize n, int lo, int hi) {
    if (lo < 0 || lo > hi || hi > n.value()) {
        throw std::invalid_argument("invalid level range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                    "] for n=" + std::to_string(n.value()));
    }
    std::vector<SubsetMask> out;
    for (std::uint64_t b = 0; b < n.cube_size(); ++b) {
        const int s = std::popcount(b);
        if (s >= lo && s <= hi) {
            out.emplace_back(static_cast<std::uint32_t>(b));
        }
    }
    return Family(n, std::move(out));
}

Family upset(const Family& family) {
    const GroundSize n = family.ground();
    // Sweep the cube in increasing order: every proper superset of G is larger than G
    // numerically, so a single pass propagating one-element extensions suffices.
    std::vector<char> in(n.cube_size(), 0);
    for (SubsetMask f : family) {
        in[f.bits] = 1;
    }
    std::vector<SubsetMask> out;
    for (std::uint64_t b = 0; b < n.cube_size(); ++b) {
        if (!in[b]) {
            continue;
        }
        out.emplace_back(static_cast<std::uint32_t>(b));
        for (int e = 0; e < n.value(); ++e) {
            in[b | (std::uint64_t{1} << e)] = 1;
        }
    }
    return Family(n, std::move(out));
}

BigCount binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigCount r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigCount factorial(int n) {
    BigCount r = 1;
    for (int i = 2; i <= n; ++i) {
        r *= i;
    }
    return r;
}

BigCount binom_tail(GroundSize n, int m, TailDirection direction) {
    if (m < 0 || m > n.value()) {
        throw std::out_of_range("binom_tail: m=" + std::to_string(m) + " outside [0, " +
                                std::to_string(n.value()) + "]");
    }
    BigCount sum = 0;
    const int lo = direction == TailDirection::AtMost ? 0 : m;
    const int hi = direction == TailDirection::AtMost ? m : n.value();
    for (int i = lo; i <= hi; ++i) {
        sum += binomial(n.value(), i);
    }
    return sum;
}

std::string to_string(SubsetMask f) {
    std::string s = "{";
    bool first = true;
    for (int e : f.elements()) {
        if (!first) {
            s += ',';
        }
        s += std::to_string(e);
        first = false;
    }
    s += '}';
    return s;
}

}  // namespace knv
