#include "knv/patterns.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "knv/family_io.hpp"
#include "text_util.hpp"

namespace knv {

PatternGraph::PatternGraph(int vertex_count, const std::vector<std::pair<int, int>>& edges)
    : vertex_count_(vertex_count), adjacency_(static_cast<std::size_t>(std::max(vertex_count, 0)), 0) {
    if (vertex_count < 0 || vertex_count > kMaxPatternVertices) {
        throw std::invalid_argument("pattern vertex count must be in [0, 16], got " + std::to_string(vertex_count));
    }
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
            throw std::invalid_argument("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
        }
        if (u == v) {
            throw std::invalid_argument("loop at vertex " + std::to_string(u));
        }
        if (adjacent(u, v)) {
            throw std::invalid_argument("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
        }
        adjacency_[static_cast<std::size_t>(u)] |= static_cast<VertexSet>(1u << v);
        adjacency_[static_cast<std::size_t>(v)] |= static_cast<VertexSet>(1u << u);
        edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
}

int PatternGraph::degree(int v) const { return std::popcount(neighbors(v)); }

int PatternGraph::max_degree() const {
    int d = 0;
    for (int v = 0; v < vertex_count_; ++v) {
        d = std::max(d, degree(v));
    }
    return d;
}

bool PatternGraph::edge_subset_of(const PatternGraph& other) const {
    if (vertex_count_ > other.vertex_count_) {
        return false;
    }
    return std::all_of(edges_.begin(), edges_.end(), [&](auto e) { return other.adjacent(e.first, e.second); });
}

PatternGraph make_pattern(PatternKind kind, int a, int b) {
    std::vector<std::pair<int, int>> edges;
    switch (kind) {
        case PatternKind::Matching:
            if (a < 1 || 2 * a > kMaxPatternVertices) {
                throw std::invalid_argument("matching size must be in [1, 8]");
            }
            for (int i = 0; i < a; ++i) {
                edges.emplace_back(2 * i, 2 * i + 1);
            }
            return PatternGraph(2 * a, edges);
        case PatternKind::Star:
            if (a < 1 || a + 1 > kMaxPatternVertices) {
                throw std::invalid_argument("star size must be in [1, 15]");
            }
            for (int i = 1; i <= a; ++i) {
                edges.emplace_back(0, i);
            }
            return PatternGraph(a + 1, edges);
        case PatternKind::Path:
            if (a < 1 || a > kMaxPatternVertices) {
                throw std::invalid_argument("path vertex count must be in [1, 16]");
            }
            for (int i = 0; i + 1 < a; ++i) {
                edges.emplace_back(i, i + 1);
            }
            return PatternGraph(a, edges);
        case PatternKind::Cycle:
            if (a < 3 || a > kMaxPatternVertices) {
                throw std::invalid_argument("cycle length must be in [3, 16]");
            }
            for (int i = 0; i < a; ++i) {
                edges.emplace_back(i, (i + 1) % a);
            }
            return PatternGraph(a, edges);
        case PatternKind::Clique:
            if (a < 1 || a > kMaxPatternVertices) {
                throw std::invalid_argument("clique size must be in [1, 16]");
            }
            for (int i = 0; i < a; ++i) {
                for (int j = i + 1; j < a; ++j) {
                    edges.emplace_back(i, j);
                }
            }
            return PatternGraph(a, edges);
        case PatternKind::CompleteBipartite:
            if (a < 1 || b < 1 || a + b > kMaxPatternVertices) {
                throw std::invalid_argument("complete bipartite sides must be >= 1 with s + t <= 16");
            }
            for (int i = 0; i < a; ++i) {
                for (int j = 0; j < b; ++j) {
                    edges.emplace_back(i, a + j);
                }
            }
            return PatternGraph(a + b, edges);
    }
    throw std::invalid_argument("unknown pattern kind");
}

namespace {

int parse_positive(std::string_view s, std::string_view whole) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("malformed pattern name '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

PatternGraph parse_pattern_name(std::string_view name) {
    if (name.size() < 2) {
        throw std::invalid_argument("malformed pattern name '" + std::string(name) + "'");
    }
    const char kind = name.front();
    const std::string_view rest = name.substr(1);
    switch (kind) {
        case 'M':
            return matching(parse_positive(rest, name));
        case 'S':
            return star(parse_positive(rest, name));
        case 'P':
            return path(parse_positive(rest, name));
        case 'C':
            return cycle(parse_positive(rest, name));
        case 'K': {
            const auto comma = rest.find(',');
            if (comma == std::string_view::npos) {
                return clique(parse_positive(rest, name));
            }
            return complete_bipartite(parse_positive(rest.substr(0, comma), name),
                                      parse_positive(rest.substr(comma + 1), name));
        }
        default:
            throw std::invalid_argument("unknown pattern name '" + std::string(name) + "'");
    }
}

PatternGraph parse_pattern(std::string_view text) {
    const auto lines = detail::content_lines(text);
    if (lines.empty()) {
        throw ParseError(1, "missing header 'p <vertex_count>'");
    }
    const auto header = detail::tokens(lines.front().text);
    if (header.size() != 2 || header[0] != "p") {
        throw ParseError(lines.front().number, "expected header 'p <vertex_count>'");
    }
    const int count = detail::parse_int(header[1], lines.front().number);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto tok = detail::tokens(lines[i].text);
        if (tok.size() != 2) {
            throw ParseError(lines[i].number, "expected an edge 'u v'");
        }
        edges.emplace_back(detail::parse_int(tok[0], lines[i].number), detail::parse_int(tok[1], lines[i].number));
    }
    try {
        return PatternGraph(count, edges);
    } catch (const std::invalid_argument& e) {
        throw ParseError(lines.front().number, e.what());
    }
}

std::string format_pattern(const PatternGraph& g) {
    std::ostringstream out;
    out << "p " << g.vertex_count() << '\n';
    for (auto [u, v] : g.edges()) {
        out << u << ' ' << v << '\n';
    }
    return out.str();
}

PatternGraph load_pattern_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open pattern file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_pattern(buffer.str());
}

PatternGraph resolve_pattern(const std::string& spec) {
    std::ifstream probe(spec);
    if (probe) {
        return load_pattern_file(spec);
    }
    return parse_pattern_name(spec);
}

namespace {

/// BFS 2-coloring; color[v] = 0 for side A. Returns false on an odd cycle.
bool two_color(const PatternGraph& g, std::vector<int>& color) {
    const int n = g.vertex_count();
    color.assign(static_cast<std::size_t>(n), -1);
    for (int root = 0; root < n; ++root) {
        if (color[static_cast<std::size_t>(root)] != -1) {
            continue;
        }
        color[static_cast<std::size_t>(root)] = 0;
        std::queue<int> queue;
        queue.push(root);
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop();
            for (int v = 0; v < n; ++v) {
                if (!g.adjacent(u, v)) {
                    continue;
                }
                auto& cv = color[static_cast<std::size_t>(v)];
                if (cv == -1) {
                    cv = 1 - color[static_cast<std::size_t>(u)];
                    queue.push(v);
                } else if (cv == color[static_cast<std::size_t>(u)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

std::optional<Bipartition> bipartition(const PatternGraph& g) {
    std::vector<int> color;
    if (!two_color(g, color)) {
        return std::nullopt;
    }
    Bipartition result;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto bit = static_cast<VertexSet>(1u << v);
        if (color[static_cast<std::size_t>(v)] == 0) {
            result.side_a |= bit;
        } else {
            result.side_b |= bit;
        }
    }
    return result;
}

Bipartition bipartition_with_side(const PatternGraph& g, VertexSet side_a) {
    const VertexSet all = static_cast<VertexSet>((1u << g.vertex_count()) - 1u);
    if ((side_a & ~all) != 0) {
        throw std::invalid_argument("side contains vertices outside the pattern");
    }
    const auto side_b = static_cast<VertexSet>(all & ~side_a);
    for (auto [u, v] : g.edges()) {
        const bool ua = (side_a >> u) & 1u;
        const bool va = (side_a >> v) & 1u;
        if (ua == va) {
            throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                        " does not cross the given sides");
        }
    }
    return {side_a, side_b};
}

std::optional<int> odd_girth(const PatternGraph& g) {
    const int n = g.vertex_count();
    std::optional<int> best;
    std::vector<int> dist;
    for (int root = 0; root < n; ++root) {
        dist.assign(static_cast<std::size_t>(n), -1);
        dist[static_cast<std::size_t>(root)] = 0;
        std::queue<int> queue;
        queue.push(root);
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop();
            for (int v = 0; v < n; ++v) {
                if (!g.adjacent(u, v)) {
                    continue;
                }
                const int du = dist[static_cast<std::size_t>(u)];
                int& dv = dist[static_cast<std::size_t>(v)];
                if (dv == -1) {
                    dv = du + 1;
                    queue.push(v);
                } else if (dv == du) {
                    // Edge between two vertices at equal depth closes an odd walk through root.
                    const int len = 2 * du + 1;
                    if (!best || len < *best) {
                        best = len;
                    }
                }
            }
        }
    }
    return best;
}

bool is_matching(const PatternGraph& g) { return g.max_degree() <= 1; }

std::vector<Component> components(const PatternGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<Component> out;
    for (int root = 0; root < n; ++root) {
        if (comp[static_cast<std::size_t>(root)] != -1) {
            continue;
        }
        const int id = static_cast<int>(out.size());
        std::vector<int> members;
        std::queue<int> queue;
        queue.push(root);
        comp[static_cast<std::size_t>(root)] = id;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop();
            members.push_back(u);
            for (int v = 0; v < n; ++v) {
                if (g.adjacent(u, v) && comp[static_cast<std::size_t>(v)] == -1) {
                    comp[static_cast<std::size_t>(v)] = id;
                    queue.push(v);
                }
            }
        }
        std::sort(members.begin(), members.end());
        std::vector<int> local(static_cast<std::size_t>(n), -1);
        for (std::size_t i = 0; i < members.size(); ++i) {
            local[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
        }
        std::vector<std::pair<int, int>> edges;
        for (auto [u, v] : g.edges()) {
            if (comp[static_cast<std::size_t>(u)] == id) {
                edges.emplace_back(local[static_cast<std::size_t>(u)], local[static_cast<std::size_t>(v)]);
            }
        }
        out.push_back({PatternGraph(static_cast<int>(members.size()), edges), std::move(members)});
    }
    return out;
}

std::string describe(const PatternGraph& g) {
    std::ostringstream out;
    out << "graph(" << g.vertex_count() << " vertices;";
    for (auto [u, v] : g.edges()) {
        out << ' ' << u << '-' << v;
    }
    out << ')';
    return out.str();
}

}  // namespace knv
