#pragma once

// Forbidden pattern graphs G on at most 16 vertices.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace knv {

inline constexpr int kMaxPatternVertices = 16;

/// Vertex subset of a pattern graph; bit v set iff vertex v is present.
using VertexSet = std::uint16_t;

/// A simple graph on vertices 0..vertex_count-1.
class PatternGraph {
public:
    PatternGraph() = default;
    /// Throws std::invalid_argument on loops, duplicate edges or out-of-range endpoints.
    PatternGraph(int vertex_count, const std::vector<std::pair<int, int>>& edges);

    [[nodiscard]] int vertex_count() const noexcept { return vertex_count_; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    /// Edges as (u, v) with u < v, sorted.
    [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
    [[nodiscard]] VertexSet neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
    [[nodiscard]] bool adjacent(int u, int v) const { return (neighbors(u) >> v) & 1u; }
    [[nodiscard]] int degree(int v) const;
    [[nodiscard]] int max_degree() const;

    /// Spanning-subgraph test on the same labels: every edge of *this is an edge of other.
    [[nodiscard]] bool edge_subset_of(const PatternGraph& other) const;

    friend bool operator==(const PatternGraph& a, const PatternGraph& b) {
        return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
    }

private:
    int vertex_count_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<VertexSet> adjacency_;
};

enum class PatternKind { Matching, Star, Path, Cycle, Clique, CompleteBipartite };

/// Named patterns with canonical labelings:
///   Matching k:   edges (0,1), (2,3), ..., (2k-2, 2k-1)
///   Star t:       center 0, leaves 1..t
///   Path p:       p vertices 0-1-...-(p-1)
///   Cycle l:      0-1-...-(l-1)-0, l >= 3
///   Clique r:     all pairs on 0..r-1
///   CompleteBipartite s,t: sides 0..s-1 and s..s+t-1
[[nodiscard]] PatternGraph make_pattern(PatternKind kind, int a, int b = 0);

[[nodiscard]] inline PatternGraph matching(int k) { return make_pattern(PatternKind::Matching, k); }
[[nodiscard]] inline PatternGraph star(int t) { return make_pattern(PatternKind::Star, t); }
[[nodiscard]] inline PatternGraph path(int p) { return make_pattern(PatternKind::Path, p); }
[[nodiscard]] inline PatternGraph cycle(int l) { return make_pattern(PatternKind::Cycle, l); }
[[nodiscard]] inline PatternGraph clique(int r) { return make_pattern(PatternKind::Clique, r); }
[[nodiscard]] inline PatternGraph complete_bipartite(int s, int t) {
    return make_pattern(PatternKind::CompleteBipartite, s, t);
}

/// Parses a CLI pattern name: "M2", "S3", "P3", "C5", "K4", "K2,3".
[[nodiscard]] PatternGraph parse_pattern_name(std::string_view name);

/// Pattern file format: "p <vertex_count>" then one "u v" edge per line, 0-indexed.
[[nodiscard]] PatternGraph parse_pattern(std::string_view text);
[[nodiscard]] std::string format_pattern(const PatternGraph& g);
[[nodiscard]] PatternGraph load_pattern_file(const std::string& path);

/// Resolves a CLI argument: a named pattern, or a path to a pattern file.
[[nodiscard]] PatternGraph resolve_pattern(const std::string& spec);

struct Bipartition {
    VertexSet side_a = 0;
    VertexSet side_b = 0;
};

/// 2-coloring with the component's lowest-numbered vertex on side A;
/// std::nullopt iff the graph has an odd cycle.
[[nodiscard]] std::optional<Bipartition> bipartition(const PatternGraph& g);

/// Checks that side_a is one side of a proper 2-coloring and returns the bipartition.
/// Throws std::invalid_argument otherwise.
[[nodiscard]] Bipartition bipartition_with_side(const PatternGraph& g, VertexSet side_a);

/// Length of the shortest odd cycle; std::nullopt iff bipartite.
[[nodiscard]] std::optional<int> odd_girth(const PatternGraph& g);

/// True iff the maximum degree is at most 1 (isolated vertices allowed).
[[nodiscard]] bool is_matching(const PatternGraph& g);

struct Component {
    PatternGraph graph;
    /// original_label[i] is the vertex of the parent graph relabeled as i.
    std::vector<int> original_label;
};

/// Connected components ordered by their smallest original vertex.
[[nodiscard]] std::vector<Component> components(const PatternGraph& g);

[[nodiscard]] std::string describe(const PatternGraph& g);

}  // namespace knv
