#include "knv/freeness.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace knv {

namespace {

constexpr std::size_t kNoVertex = static_cast<std::size_t>(-1);

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

/// Backtracking embedding of a pattern into a host given by bitset rows.
/// RowFn(i, scratch) -> const std::uint64_t*; DegFn(i) -> std::size_t.
template <class RowFn, class DegFn>
class Embedder {
public:
    Embedder(const PatternGraph& g, std::vector<int> order, std::size_t host_size, std::size_t words, RowFn row_fn,
             DegFn deg_fn)
        : g_(g),
          order_(std::move(order)),
          host_size_(host_size),
          words_(words),
          row_fn_(std::move(row_fn)),
          deg_fn_(std::move(deg_fn)),
          map_(static_cast<std::size_t>(g.vertex_count()), kNoVertex),
          used_(words, 0),
          candidates_(order_.size(), std::vector<std::uint64_t>(words, 0)),
          scratch_(words, 0) {
        VertexSet placed = 0;
        for (int v : order_) {
            earlier_neighbors_.push_back(static_cast<VertexSet>(g.neighbors(v) & placed));
            placed = static_cast<VertexSet>(placed | (1u << v));
        }
    }

    /// anchor: host vertex forced for order[0], or kNoVertex.
    bool run(std::size_t anchor) {
        if (static_cast<std::size_t>(g_.vertex_count()) > host_size_) {
            return false;
        }
        anchor_ = anchor;
        return extend(0);
    }

    [[nodiscard]] const std::vector<std::size_t>& map() const noexcept { return map_; }

private:
    bool extend(std::size_t depth) {
        if (depth == order_.size()) {
            return true;
        }
        const int v = order_[depth];
        const auto need = static_cast<std::size_t>(g_.degree(v));
        auto& cand = candidates_[depth];

        if (depth == 0 && anchor_ != kNoVertex) {
            std::fill(cand.begin(), cand.end(), 0);
            cand[anchor_ / 64] = std::uint64_t{1} << (anchor_ % 64);
        } else {
            std::fill(cand.begin(), cand.end(), ~std::uint64_t{0});
            if (host_size_ % 64 != 0) {
                cand.back() = (std::uint64_t{1} << (host_size_ % 64)) - 1;
            }
        }
        for (std::size_t w = 0; w < words_; ++w) {
            cand[w] &= ~used_[w];
        }
        for (VertexSet nb = earlier_neighbors_[depth]; nb != 0; nb = static_cast<VertexSet>(nb & (nb - 1))) {
            const int u = std::countr_zero(static_cast<unsigned>(nb));
            const std::uint64_t* r = row_fn_(map_[static_cast<std::size_t>(u)], scratch_);
            for (std::size_t w = 0; w < words_; ++w) {
                cand[w] &= r[w];
            }
        }

        for (std::size_t w = 0; w < words_; ++w) {
            for (std::uint64_t bits = cand[w]; bits != 0; bits &= bits - 1) {
                const std::size_t h = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                if (deg_fn_(h) < need) {
                    continue;
                }
                map_[static_cast<std::size_t>(v)] = h;
                used_[w] |= std::uint64_t{1} << (h % 64);
                if (extend(depth + 1)) {
                    return true;
                }
                used_[w] &= ~(std::uint64_t{1} << (h % 64));
                map_[static_cast<std::size_t>(v)] = kNoVertex;
            }
        }
        return false;
    }

    const PatternGraph& g_;
    std::vector<int> order_;
    std::size_t host_size_;
    std::size_t words_;
    RowFn row_fn_;
    DegFn deg_fn_;
    std::vector<VertexSet> earlier_neighbors_;
    std::vector<std::size_t> map_;
    std::vector<std::uint64_t> used_;
    std::vector<std::vector<std::uint64_t>> candidates_;
    std::vector<std::uint64_t> scratch_;
    std::size_t anchor_ = kNoVertex;
};

std::vector<int> degree_order(const PatternGraph& g) {
    std::vector<int> order(static_cast<std::size_t>(g.vertex_count()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
    return order;
}

/// Order starting at anchor, then greedily the vertex with most already-placed neighbors
/// (ties: higher degree, then lower label).
std::vector<int> anchored_order(const PatternGraph& g, int anchor) {
    std::vector<int> order{anchor};
    VertexSet placed = static_cast<VertexSet>(1u << anchor);
    while (static_cast<int>(order.size()) < g.vertex_count()) {
        int best = -1;
        int best_links = -1;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if ((placed >> v) & 1u) {
                continue;
            }
            const int links = std::popcount(static_cast<unsigned>(g.neighbors(v) & placed));
            if (links > best_links || (links == best_links && g.degree(v) > g.degree(best))) {
                best = v;
                best_links = links;
            }
        }
        order.push_back(best);
        placed = static_cast<VertexSet>(placed | (1u << best));
    }
    return order;
}

}  // namespace

InducedKneser::InducedKneser(Family family, std::size_t vertex_limit)
    : family_(std::move(family)), degree_(family_.size(), 0) {
    const std::size_t n_vertices = family_.size();
    if (n_vertices > vertex_limit) {
        throw SizeLimitExceeded("family of " + std::to_string(n_vertices) + " sets exceeds the vertex limit of " +
                                std::to_string(vertex_limit));
    }
    words_ = word_count(n_vertices);
    if (n_vertices <= kDenseLimit) {
        rows_.assign(n_vertices * words_, 0);
        for (std::size_t i = 0; i < n_vertices; ++i) {
            for (std::size_t j = i + 1; j < n_vertices; ++j) {
                if (kneser_adjacent(family_[i], family_[j])) {
                    rows_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
                    rows_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
                    ++degree_[i];
                    ++degree_[j];
                }
            }
        }
        return;
    }
    // Degree of F = #members contained in [n] \ F, minus F itself when F is empty.
    const GroundSize n = family_.ground();
    std::vector<std::uint32_t> below(n.cube_size(), 0);
    for (SubsetMask f : family_) {
        below[f.bits] = 1;
    }
    for (int e = 0; e < n.value(); ++e) {
        const std::uint64_t bit = std::uint64_t{1} << e;
        for (std::uint64_t s = 0; s < n.cube_size(); ++s) {
            if (s & bit) {
                below[s] += below[s ^ bit];
            }
        }
    }
    for (std::size_t i = 0; i < n_vertices; ++i) {
        const SubsetMask f = family_[i];
        degree_[i] = below[complement(f, n).bits] - (f.empty() ? 1u : 0u);
    }
}

std::size_t InducedKneser::max_degree() const noexcept {
    return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
}

std::uint64_t InducedKneser::edge_count() const noexcept {
    return std::accumulate(degree_.begin(), degree_.end(), std::uint64_t{0}) / 2;
}

std::span<const std::uint64_t> InducedKneser::row(std::size_t i, std::vector<std::uint64_t>& scratch) const {
    if (!rows_.empty()) {
        return {rows_.data() + i * words_, words_};
    }
    scratch.assign(words_, 0);
    const SubsetMask f = family_[i];
    for (std::size_t j = 0; j < family_.size(); ++j) {
        if (kneser_adjacent(f, family_[j])) {
            scratch[j / 64] |= std::uint64_t{1} << (j % 64);
        }
    }
    return scratch;
}

std::vector<std::size_t> InducedKneser::neighbors(std::size_t i) const {
    std::vector<std::uint64_t> scratch;
    const auto r = row(i, scratch);
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < r.size(); ++w) {
        for (std::uint64_t bits = r[w]; bits != 0; bits &= bits - 1) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        }
    }
    return out;
}

InducedKneser induced_kneser(const Family& family, std::size_t vertex_limit) {
    return InducedKneser(family, vertex_limit);
}

std::optional<GraphWitness> contains_subgraph(const InducedKneser& host, const PatternGraph& g) {
    auto row_fn = [&host](std::size_t i, std::vector<std::uint64_t>& scratch) {
        return host.row(i, scratch).data();
    };
    auto deg_fn = [&host](std::size_t i) { return host.degree(i); };
    Embedder embedder(g, degree_order(g), host.size(), host.words(), row_fn, deg_fn);
    if (!embedder.run(kNoVertex)) {
        return std::nullopt;
    }
    return GraphWitness{embedder.map()};
}

bool is_free(const Family& family, const PatternGraph& g) {
    return !contains_subgraph(induced_kneser(family), g).has_value();
}

bool is_witness(const InducedKneser& host, const PatternGraph& g, const GraphWitness& witness) {
    if (witness.map.size() != static_cast<std::size_t>(g.vertex_count())) {
        return false;
    }
    std::vector<SubsetMask> images;
    for (std::size_t h : witness.map) {
        if (h >= host.size()) {
            return false;
        }
        images.push_back(host.mask(h));
    }
    return is_graph_copy(images, g);
}

bool is_graph_copy(std::span<const SubsetMask> images, const PatternGraph& g) {
    if (images.size() != static_cast<std::size_t>(g.vertex_count())) {
        return false;
    }
    std::vector<SubsetMask> sorted(images.begin(), images.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        return false;
    }
    return std::all_of(g.edges().begin(), g.edges().end(), [&](auto e) {
        return kneser_adjacent(images[static_cast<std::size_t>(e.first)], images[static_cast<std::size_t>(e.second)]);
    });
}

IncrementalChecker::IncrementalChecker(PatternGraph g, std::size_t capacity_hint) : pattern_(std::move(g)) {
    // The empty pattern is contained in every stack, including the empty one, which no
    // push/pop oracle can express.
    if (pattern_.vertex_count() == 0) {
        throw std::invalid_argument("incremental checking needs a pattern with at least one vertex");
    }
    for (int a = 0; a < pattern_.vertex_count(); ++a) {
        anchored_orders_.push_back(anchored_order(pattern_, a));
    }
    grow(std::max<std::size_t>(capacity_hint, 64));
}

void IncrementalChecker::grow(std::size_t capacity) {
    const std::size_t new_words = word_count(capacity);
    std::vector<std::uint64_t> rows(capacity * new_words, 0);
    for (std::size_t i = 0; i < stack_.size(); ++i) {
        std::copy_n(rows_.data() + i * words_, words_, rows.data() + i * new_words);
    }
    rows_ = std::move(rows);
    words_ = new_words;
    capacity_ = capacity;
}

bool IncrementalChecker::push(SubsetMask set) {
    const std::size_t t = stack_.size();
    if (t == capacity_) {
        grow(2 * capacity_);
    }
    stack_.push_back(set);
    degree_.push_back(0);
    std::uint64_t* rt = row(t);
    std::fill_n(rt, words_, 0);
    for (std::size_t i = 0; i < t; ++i) {
        if (kneser_adjacent(stack_[i], set)) {
            rt[i / 64] |= std::uint64_t{1} << (i % 64);
            row(i)[t / 64] |= std::uint64_t{1} << (t % 64);
            ++degree_[i];
            ++degree_[t];
        }
    }
    if (violated_at_ == kNone && copy_through(t)) {
        violated_at_ = t;
    }
    return currently_free();
}

void IncrementalChecker::pop() {
    if (stack_.empty()) {
        throw std::logic_error("pop on an empty checker");
    }
    const std::size_t t = stack_.size() - 1;
    const std::uint64_t* rt = row(t);
    for (std::size_t w = 0; w < words_; ++w) {
        for (std::uint64_t bits = rt[w]; bits != 0; bits &= bits - 1) {
            const std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            row(i)[t / 64] &= ~(std::uint64_t{1} << (t % 64));
            --degree_[i];
        }
    }
    stack_.pop_back();
    degree_.pop_back();
    if (violated_at_ == t) {
        violated_at_ = kNone;
    }
}

bool IncrementalChecker::copy_through(std::size_t anchor) const {
    const std::size_t host_size = stack_.size();
    auto row_fn = [this](std::size_t i, std::vector<std::uint64_t>&) { return rows_.data() + i * words_; };
    auto deg_fn = [this](std::size_t i) { return degree_[i]; };
    // Rows only carry bits below host_size, so the active word count suffices.
    const std::size_t words = word_count(host_size);
    for (const auto& order : anchored_orders_) {
        if (degree_[anchor] < static_cast<std::size_t>(pattern_.degree(order.front()))) {
            continue;
        }
        Embedder embedder(pattern_, order, host_size, words, row_fn, deg_fn);
        if (embedder.run(anchor)) {
            return true;
        }
    }
    return false;
}

std::unique_ptr<FamilyOracle> IncrementalChecker::fresh() const {
    return std::make_unique<IncrementalChecker>(pattern_, capacity_);
}

std::unique_ptr<IncrementalChecker> incremental_checker(const PatternGraph& g) {
    return std::make_unique<IncrementalChecker>(g);
}

}  // namespace knv
