#pragma once

// Subgraph containment in the Kneser graph induced by a family.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "knv/oracle.hpp"
#include "knv/patterns.hpp"
#include "knv/sets.hpp"

namespace knv {

class SizeLimitExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Kn_n[F]: vertices are the members of F (by canonical index), edges join disjoint sets.
///
/// Adjacency rows are materialized as bitsets up to kDenseLimit vertices and
/// computed on demand above that. Degrees are always exact and precomputed with a
/// subset-sum transform over 2^[n].
class InducedKneser {
public:
    static constexpr std::size_t kDefaultVertexLimit = std::size_t{1} << 20;
    static constexpr std::size_t kDenseLimit = std::size_t{1} << 14;

    explicit InducedKneser(Family family, std::size_t vertex_limit = kDefaultVertexLimit);

    [[nodiscard]] const Family& vertices() const noexcept { return family_; }
    [[nodiscard]] std::size_t size() const noexcept { return family_.size(); }
    [[nodiscard]] SubsetMask mask(std::size_t i) const { return family_[i]; }
    [[nodiscard]] bool adjacent(std::size_t i, std::size_t j) const {
        return kneser_adjacent(family_[i], family_[j]);
    }
    [[nodiscard]] std::size_t degree(std::size_t i) const { return degree_[i]; }
    [[nodiscard]] std::size_t max_degree() const noexcept;
    [[nodiscard]] std::uint64_t edge_count() const noexcept;
    [[nodiscard]] bool dense() const noexcept { return !rows_.empty() || family_.empty(); }
    [[nodiscard]] std::size_t words() const noexcept { return words_; }

    /// Adjacency bitset of vertex i (words() 64-bit words). Materialized rows are
    /// returned directly; otherwise the row is computed into scratch.
    [[nodiscard]] std::span<const std::uint64_t> row(std::size_t i, std::vector<std::uint64_t>& scratch) const;

    /// Sorted neighbor indices of vertex i.
    [[nodiscard]] std::vector<std::size_t> neighbors(std::size_t i) const;

private:
    Family family_;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> rows_;
    std::vector<std::size_t> degree_;
};

/// Pattern vertex v is mapped to host vertex map[v] (an index into the host family).
struct GraphWitness {
    std::vector<std::size_t> map;
};

[[nodiscard]] InducedKneser induced_kneser(const Family& family,
                                           std::size_t vertex_limit = InducedKneser::kDefaultVertexLimit);

/// Exhaustive backtracking for a (not necessarily induced) copy of g. Pattern vertices are
/// assigned in decreasing-degree order (ties by label), host candidates in canonical order.
[[nodiscard]] std::optional<GraphWitness> contains_subgraph(const InducedKneser& host, const PatternGraph& g);

[[nodiscard]] bool is_free(const Family& family, const PatternGraph& g);

/// Injective and every pattern edge lands on a host edge.
[[nodiscard]] bool is_witness(const InducedKneser& host, const PatternGraph& g, const GraphWitness& witness);

/// Same check on explicit images: images[v] is the set assigned to pattern vertex v.
[[nodiscard]] bool is_graph_copy(std::span<const SubsetMask> images, const PatternGraph& g);

/// Incremental G-freeness over a stack of distinct sets. Each push only searches for
/// copies through the new vertex, since the stack below it was already free.
/// Patterns without vertices throw std::invalid_argument.
class IncrementalChecker final : public FamilyOracle {
public:
    explicit IncrementalChecker(PatternGraph g, std::size_t capacity_hint = 64);

    bool push(SubsetMask set) override;
    void pop() override;
    [[nodiscard]] bool currently_free() const override { return violated_at_ == kNone; }
    [[nodiscard]] std::size_t depth() const override { return stack_.size(); }
    [[nodiscard]] std::unique_ptr<FamilyOracle> fresh() const override;

    [[nodiscard]] const PatternGraph& pattern() const noexcept { return pattern_; }
    [[nodiscard]] std::span<const SubsetMask> stack() const noexcept { return stack_; }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    void grow(std::size_t capacity);
    [[nodiscard]] std::uint64_t* row(std::size_t i) { return rows_.data() + i * words_; }
    [[nodiscard]] bool copy_through(std::size_t anchor) const;

    PatternGraph pattern_;
    std::vector<std::vector<int>> anchored_orders_;
    std::vector<SubsetMask> stack_;
    std::vector<std::size_t> degree_;
    std::vector<std::uint64_t> rows_;
    std::size_t words_ = 0;
    std::size_t capacity_ = 0;
    std::size_t violated_at_ = kNone;
};

[[nodiscard]] std::unique_ptr<IncrementalChecker> incremental_checker(const PatternGraph& g);

}  // namespace knv
