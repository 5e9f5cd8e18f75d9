#pragma once

// Posets on at most 16 elements, weak copies in set families, La(n, .) at small n,
// e(P) bounded certification, and the band / witness conversion used to turn
// poset copies into graph copies in the Kneser cube.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knv/engine.hpp"
#include "knv/freeness.hpp"
#include "knv/oracle.hpp"
#include "knv/patterns.hpp"
#include "knv/sets.hpp"

namespace knv {

inline constexpr int kMaxPosetSize = 16;

using ElementSet = std::uint16_t;

/// Strict partial order; stored transitively closed.
class Poset {
public:
    Poset() = default;
    /// Antichain on `size` elements.
    explicit Poset(int size);
    /// Transitive closure of the given relations (p, q) meaning p < q.
    /// Throws std::invalid_argument if the closure has a cycle.
    Poset(int size, const std::vector<std::pair<int, int>>& relations);

    [[nodiscard]] int size() const noexcept { return size_; }
    [[nodiscard]] bool less(int p, int q) const { return (above_.at(static_cast<std::size_t>(p)) >> q) & 1u; }
    [[nodiscard]] bool comparable(int p, int q) const { return less(p, q) || less(q, p); }
    [[nodiscard]] ElementSet above(int p) const { return above_.at(static_cast<std::size_t>(p)); }
    [[nodiscard]] ElementSet below(int p) const { return below_.at(static_cast<std::size_t>(p)); }
    /// All pairs p < q, sorted.
    [[nodiscard]] std::vector<std::pair<int, int>> relations() const;
    /// Cover pairs (Hasse diagram arcs), sorted.
    [[nodiscard]] std::vector<std::pair<int, int>> covers() const;

    friend bool operator==(const Poset& a, const Poset& b) {
        return a.size_ == b.size_ && a.above_ == b.above_;
    }

private:
    void close_and_validate();

    int size_ = 0;
    std::vector<ElementSet> above_;
    std::vector<ElementSet> below_;
};

[[nodiscard]] Poset chain(int k);
[[nodiscard]] Poset antichain(int k);
/// One element below two: 0 < 1, 0 < 2.
[[nodiscard]] Poset vee();
/// Two elements below one: 0 < 2, 1 < 2.
[[nodiscard]] Poset wedge();
/// Bottoms 0,1 each below tops 2,3.
[[nodiscard]] Poset butterfly();
/// Crown on size = 2t elements (t >= 2): bottoms 0..t-1, tops t..2t-1, bottom i below
/// tops t+i and t+(i+1 mod t). crown(4) is the butterfly.
[[nodiscard]] Poset crown(int size);
/// u_1..u_s below v below w_1..w_t, with all implied relations: u's are 0..s-1, v is s,
/// w's are s+1..s+t.
[[nodiscard]] Poset complete_three_level(int s, int t);

enum class PosetSide { A, B };

/// P_{G,A}: x < y iff xy is an edge and y lies on the upper side. The side is taken from
/// the canonical bipartition (A) or its opposite (B).
[[nodiscard]] Poset poset_from_bipartite(const PatternGraph& g, PosetSide side = PosetSide::A);
/// Same with an explicit upper side; throws unless it is one side of a proper 2-coloring.
[[nodiscard]] Poset poset_from_bipartite(const PatternGraph& g, VertexSet upper_side);

[[nodiscard]] Poset dual(const Poset& p);
[[nodiscard]] int height(const Poset& p);
[[nodiscard]] bool is_tree_poset(const Poset& p);
[[nodiscard]] bool is_isomorphic(const Poset& a, const Poset& b);

/// Parses "chain<k>", "antichain<k>", "V", "Lambda", "butterfly", "crown<2t>", "K<s>,1,<t>".
[[nodiscard]] Poset parse_poset_name(std::string_view name);
/// Poset file format: "e <size>" then "u < v" lines; closure applied on load.
[[nodiscard]] Poset parse_poset(std::string_view text);
[[nodiscard]] std::string format_poset(const Poset& p);
[[nodiscard]] Poset load_poset_file(const std::string& path);
/// A named poset or a path to a poset file.
[[nodiscard]] Poset resolve_poset(const std::string& spec);

/// image[p] is the set assigned to element p.
struct PosetCopy {
    std::vector<SubsetMask> image;
};

/// Injective and p < q implies image[p] is a subset of image[q].
[[nodiscard]] bool is_poset_copy(const PosetCopy& copy, const Poset& p);

/// Weak copy search; elements are placed along a linear extension.
[[nodiscard]] std::optional<PosetCopy> contains_poset_copy(const Family& family, const Poset& p);

/// Incremental freeness for a list of forbidden posets.
class IncrementalPosetChecker final : public FamilyOracle {
public:
    explicit IncrementalPosetChecker(std::vector<Poset> forbidden);

    bool push(SubsetMask set) override;
    void pop() override;
    [[nodiscard]] bool currently_free() const override { return violated_at_ == kNone; }
    [[nodiscard]] std::size_t depth() const override { return stack_.size(); }
    [[nodiscard]] std::unique_ptr<FamilyOracle> fresh() const override;

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    [[nodiscard]] bool copy_through(std::size_t anchor) const;

    std::vector<Poset> forbidden_;
    std::vector<std::vector<std::vector<int>>> anchored_orders_;
    std::vector<SubsetMask> stack_;
    std::size_t violated_at_ = kNone;
};

struct LaResult {
    BigCount value;
    Family witness;
    bool exact = false;
    /// Certified upper bound (equals value when exact).
    BigCount upper_bound;
};

inline constexpr int kMaxExactLaGround = 5;

/// Largest family in 2^[n] with no copy of any forbidden poset; complement-closed when
/// symmetric. Throws std::invalid_argument for n > 5.
[[nodiscard]] LaResult la(GroundSize n, const std::vector<Poset>& forbidden, bool symmetric,
                          const SearchBudget& budget = {});

struct EResult {
    /// Largest k such that every k consecutive levels j+1..j+k (0 <= j < n) of 2^[n] are
    /// P-free for all n <= n_max.
    int k = 0;
    /// A copy of P in k+1 consecutive levels, when one was found.
    std::optional<PosetCopy> certificate;
    int certificate_n = 0;
    int certificate_lo = 0;
    int certificate_hi = 0;
};

/// Throws std::invalid_argument for n_max outside [1, 12].
[[nodiscard]] EResult e_of_poset(const Poset& p, int n_max);

/// Levels lo..hi with |L - n/2| <= n^{2/3}, compared exactly.
[[nodiscard]] std::pair<int, int> sym_band_levels(GroundSize n);

/// F ∩ F^c restricted to the middle band of levels; complement-closed.
[[nodiscard]] Family extract_sym_band(const Family& family);

class CollisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Converts a copy of P_{G,A} (A = sides.side_a, the upper side) in a complement-closed
/// host into a copy of G in Kn_n: B-vertices keep their sets, A-vertices take complements.
/// Throws CollisionError when some set on side A has its complement on side B, and
/// std::invalid_argument when the copy or host do not meet the preconditions.
[[nodiscard]] GraphWitness poset_copy_to_graph_copy(const PosetCopy& copy, const PatternGraph& g,
                                                    const Bipartition& sides, const Family& host);

}  // namespace knv
