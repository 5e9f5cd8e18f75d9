#pragma once

// Ground-set arithmetic for the Kneser cube: subsets of [n] as bitmasks,
// canonically ordered families, level slices, upsets and exact binomial sums.

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace knv {

/// Exact non-negative integer used for binomials, weights and double counts.
using BigCount = boost::multiprecision::cpp_int;

inline constexpr int kMaxGroundSize = 30;

/// Size n of the ground set [n] = {1, ..., n}; 1 <= n <= 30.
class GroundSize {
public:
    constexpr explicit GroundSize(int n) : n_(n) {
        if (n < 1 || n > kMaxGroundSize) {
            throw std::out_of_range("ground size must be in [1, 30], got " + std::to_string(n));
        }
    }
    [[nodiscard]] constexpr int value() const noexcept { return n_; }
    [[nodiscard]] constexpr std::uint32_t full_bits() const noexcept {
        return (1u << n_) - 1u;
    }
    [[nodiscard]] constexpr std::uint64_t cube_size() const noexcept { return std::uint64_t{1} << n_; }

    friend constexpr auto operator<=>(GroundSize, GroundSize) = default;

private:
    int n_;
};

/// A subset of [n]; element i is present iff bit i-1 is set.
struct SubsetMask {
    std::uint32_t bits = 0;

    constexpr SubsetMask() = default;
    constexpr explicit SubsetMask(std::uint32_t b) : bits(b) {}

    /// Builds a mask from 1-based elements.
    static SubsetMask of(std::initializer_list<int> elements);
    static SubsetMask of(std::span<const int> elements);

    [[nodiscard]] constexpr int size() const noexcept { return std::popcount(bits); }
    [[nodiscard]] constexpr bool empty() const noexcept { return bits == 0; }
    [[nodiscard]] constexpr bool contains(int element) const noexcept {
        return element >= 1 && element <= 32 && ((bits >> (element - 1)) & 1u) != 0;
    }
    [[nodiscard]] constexpr bool subset_of(SubsetMask other) const noexcept {
        return (bits & ~other.bits) == 0;
    }
    [[nodiscard]] constexpr bool disjoint_from(SubsetMask other) const noexcept {
        return (bits & other.bits) == 0;
    }
    [[nodiscard]] constexpr bool valid_for(GroundSize n) const noexcept {
        return (bits & ~n.full_bits()) == 0;
    }
    /// 1-based elements in increasing order.
    [[nodiscard]] std::vector<int> elements() const;

    friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) { return SubsetMask{a.bits | b.bits}; }
    friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) { return SubsetMask{a.bits & b.bits}; }
    friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;
};

[[nodiscard]] constexpr SubsetMask complement(SubsetMask f, GroundSize n) noexcept {
    return SubsetMask{~f.bits & n.full_bits()};
}

/// Kneser adjacency: distinct and disjoint. A vertex is never adjacent to itself.
[[nodiscard]] constexpr bool kneser_adjacent(SubsetMask a, SubsetMask b) noexcept {
    return a != b && a.disjoint_from(b);
}

/// A strictly ascending (by bitmask value) collection of subsets of [n].
class Family {
public:
    explicit Family(GroundSize n) : n_(n) {}

    /// Sorts and removes duplicates; throws if some member has bits outside [n].
    Family(GroundSize n, std::vector<SubsetMask> members);
    Family(GroundSize n, std::initializer_list<SubsetMask> members)
        : Family(n, std::vector<SubsetMask>(members)) {}

    /// All 2^n subsets.
    static Family cube(GroundSize n);

    [[nodiscard]] GroundSize ground() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
    [[nodiscard]] const std::vector<SubsetMask>& members() const noexcept { return members_; }
    [[nodiscard]] SubsetMask operator[](std::size_t i) const { return members_[i]; }
    [[nodiscard]] auto begin() const noexcept { return members_.begin(); }
    [[nodiscard]] auto end() const noexcept { return members_.end(); }

    [[nodiscard]] bool contains(SubsetMask f) const noexcept;
    /// Index of f in canonical order, or size() if absent.
    [[nodiscard]] std::size_t index_of(SubsetMask f) const noexcept;
    [[nodiscard]] bool subset_of(const Family& other) const;
    /// True iff F in family implies complement(F) in family.
    [[nodiscard]] bool complement_closed() const;

    [[nodiscard]] Family united(const Family& other) const;
    [[nodiscard]] Family intersected(const Family& other) const;

    friend bool operator==(const Family& a, const Family& b) {
        return a.n_ == b.n_ && a.members_ == b.members_;
    }

private:
    GroundSize n_;
    std::vector<SubsetMask> members_;
};

[[nodiscard]] Family family_complement(const Family& family);

/// All F with lo <= |F| <= hi.
[[nodiscard]] Family level_slice(GroundSize n, int lo, int hi);

/// All supersets of members (includes the members themselves).
[[nodiscard]] Family upset(const Family& family);

[[nodiscard]] BigCount binomial(int n, int k);
[[nodiscard]] BigCount factorial(int n);

enum class TailDirection { AtMost, AtLeast };

/// Sum of binom(n, i) over i <= m (AtMost) or i >= m (AtLeast).
[[nodiscard]] BigCount binom_tail(GroundSize n, int m, TailDirection direction);

/// Formats a subset as "{1,3,4}"; the empty set is "{}".
[[nodiscard]] std::string to_string(SubsetMask f);

}  // namespace knv
