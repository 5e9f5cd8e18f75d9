#pragma once

// Katona's cycle method over cyclic permutations of [n]: intervals, the binomial weight,
// the double-counting identity, and the interval-shift machinery behind the odd-cycle
// upper bound.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "knv/sets.hpp"

namespace knv {

/// A cyclic permutation of [n], stored rotated so that order()[0] == 1.
class CyclicPerm {
public:
    /// Throws std::invalid_argument unless `order` is a permutation of 1..n.
    explicit CyclicPerm(std::vector<int> order);

    static CyclicPerm identity(GroundSize n);

    [[nodiscard]] int n() const noexcept { return static_cast<int>(order_.size()); }
    [[nodiscard]] const std::vector<int>& order() const noexcept { return order_; }
    /// pi(i) for 1-based i, indices taken mod n.
    [[nodiscard]] int at(long long i) const;
    /// 1-based position of element e.
    [[nodiscard]] int position_of(int e) const { return position_[static_cast<std::size_t>(e - 1)] + 1; }

    friend bool operator==(const CyclicPerm& a, const CyclicPerm& b) { return a.order_ == b.order_; }

private:
    std::vector<int> order_;
    std::vector<int> position_;
};

/// Calls fn on each of the (n-1)! cyclic permutations, in lexicographic order of the
/// canonical form.
void for_each_cyclic_perm(GroundSize n, const std::function<void(const CyclicPerm&)>& fn);

/// S = {pi(start), ..., pi(start + length - 1)}, indices mod n.
struct IntervalSpec {
    int start = 1;
    int length = 1;

    [[nodiscard]] SubsetMask mask(const CyclicPerm& pi) const;
};

/// True iff S is a set of cyclically consecutive elements of pi. [n] is an interval;
/// the empty set throws std::invalid_argument.
[[nodiscard]] bool is_interval(SubsetMask s, const CyclicPerm& pi);

/// The interval spec of S with respect to pi, if S is a proper nonempty interval.
[[nodiscard]] std::optional<IntervalSpec> interval_spec(SubsetMask s, const CyclicPerm& pi);

/// Members that are intervals of pi; the empty set is never included.
[[nodiscard]] Family restrict_to_intervals(const Family& family, const CyclicPerm& pi);

/// w_n(F) = binom(n, |F|).
[[nodiscard]] BigCount weight(GroundSize n, SubsetMask f);
[[nodiscard]] BigCount family_weight(const Family& family);

struct DoubleCount {
    BigCount lhs;
    BigCount rhs;
    bool equal = false;
};

inline constexpr int kMaxDoubleCountGround = 7;

/// lhs = sum over all cyclic pi of w(F_pi); rhs = |F| * n!. Requires the empty set and
/// [n] to be absent and n <= 7; throws std::invalid_argument otherwise. The permutation
/// enumeration is split by pi(2) across `threads` workers.
[[nodiscard]] DoubleCount double_count_check(const Family& family, unsigned threads = 1);

/// floor(kn/(2k+1)).
[[nodiscard]] int cycle_level(GroundSize n, int k);

/// True iff 0 <= j and j <= kn/(2k+1).
[[nodiscard]] bool j_in_domain(GroundSize n, int k, int j);

/// Largest m with floor(kn/(2k+1)) - j + 2km <= kn. Throws std::invalid_argument for j
/// outside the domain or k < 1.
[[nodiscard]] int m_of_j(GroundSize n, int k, int j);

class CycleShapeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The 2k intervals of length m(j) packed end to end after F, where |F| = floor(kn/(2k+1)) - j.
/// Together with F they must form a C_{2k+1} in Kn_n; throws CycleShapeError when they do
/// not (n too small for this k and j).
[[nodiscard]] std::vector<SubsetMask> shift_image(const IntervalSpec& f, const CyclicPerm& pi, int k);

/// ceil(2(k+1) ln(2k)), certified.
[[nodiscard]] int cycle_shift_constant(int k);
/// ceil((k+1) ln(2k)), certified.
[[nodiscard]] int half_shift_constant(int k);

/// binom(n, >= max(0, ceil(kn/(2k+1)) - ceil(2(k+1) ln(2k)))).
[[nodiscard]] BigCount cycle_upper_bound(GroundSize n, int k);

/// 2^n - binom(n, <= floor(kn/(2k+1))), the size of threshold_family(n, k).
[[nodiscard]] BigCount threshold_lower_bound(GroundSize n, int k);

struct MissingImageReport {
    /// Every checked member has some interval of its shift image missing from the family.
    bool holds = true;
    /// Members whose shift image formed a valid cycle and were checked.
    std::size_t checked = 0;
    /// Members of admissible size whose shift image is not a cycle at this n.
    std::size_t skipped = 0;
    std::optional<SubsetMask> counterexample;
};

/// Requires every member to be a nonempty interval of pi and Kn_n[family] to be
/// C_{2k+1}-free; throws std::invalid_argument otherwise.
[[nodiscard]] MissingImageReport missing_image_check(const Family& intervals, const CyclicPerm& pi, int k);

}  // namespace knv
