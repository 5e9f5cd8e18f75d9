#include "knv/posets.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "knv/family_io.hpp"
#include "text_util.hpp"

namespace knv {

namespace {

ElementSet bit(int e) { return static_cast<ElementSet>(1u << e); }

int count(ElementSet s) { return std::popcount(static_cast<unsigned>(s)); }

}  // namespace

Poset::Poset(int size) : Poset(size, {}) {}

Poset::Poset(int size, const std::vector<std::pair<int, int>>& relations)
    : size_(size), above_(static_cast<std::size_t>(std::max(size, 0)), 0) {
    if (size < 0 || size > kMaxPosetSize) {
        throw std::invalid_argument("poset size must be in [0, 16], got " + std::to_string(size));
    }
    for (auto [p, q] : relations) {
        if (p < 0 || q < 0 || p >= size || q >= size) {
            throw std::invalid_argument("relation element out of range: " + std::to_string(p) + " < " +
                                        std::to_string(q));
        }
        above_[static_cast<std::size_t>(p)] |= bit(q);
    }
    close_and_validate();
}

void Poset::close_and_validate() {
    // Warshall closure on bit rows.
    for (int k = 0; k < size_; ++k) {
        for (int i = 0; i < size_; ++i) {
            if ((above_[static_cast<std::size_t>(i)] >> k) & 1u) {
                above_[static_cast<std::size_t>(i)] |= above_[static_cast<std::size_t>(k)];
            }
        }
    }
    below_.assign(static_cast<std::size_t>(size_), 0);
    for (int i = 0; i < size_; ++i) {
        if ((above_[static_cast<std::size_t>(i)] >> i) & 1u) {
            throw std::invalid_argument("relations contain a cycle through element " + std::to_string(i));
        }
        for (int j = 0; j < size_; ++j) {
            if (less(i, j)) {
                below_[static_cast<std::size_t>(j)] |= bit(i);
            }
        }
    }
}

std::vector<std::pair<int, int>> Poset::relations() const {
    std::vector<std::pair<int, int>> out;
    for (int p = 0; p < size_; ++p) {
        for (int q = 0; q < size_; ++q) {
            if (less(p, q)) {
                out.emplace_back(p, q);
            }
        }
    }
    return out;
}

std::vector<std::pair<int, int>> Poset::covers() const {
    std::vector<std::pair<int, int>> out;
    for (auto [p, q] : relations()) {
        // p < q is a cover iff nothing lies strictly between.
        if ((above(p) & below(q)) == 0) {
            out.emplace_back(p, q);
        }
    }
    return out;
}

Poset chain(int k) {
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i + 1 < k; ++i) {
        rel.emplace_back(i, i + 1);
    }
    return Poset(k, rel);
}

Poset antichain(int k) { return Poset(k); }

Poset vee() { return Poset(3, {{0, 1}, {0, 2}}); }

Poset wedge() { return Poset(3, {{0, 2}, {1, 2}}); }

Poset butterfly() { return Poset(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

Poset crown(int size) {
    if (size < 4 || size % 2 != 0 || size > kMaxPosetSize) {
        throw std::invalid_argument("crown size must be even and in [4, 16]");
    }
    const int t = size / 2;
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < t; ++i) {
        rel.emplace_back(i, t + i);
        rel.emplace_back(i, t + (i + 1) % t);
    }
    return Poset(size, rel);
}

Poset complete_three_level(int s, int t) {
    if (s < 0 || t < 0 || s + 1 + t > kMaxPosetSize) {
        throw std::invalid_argument("complete three-level poset needs s, t >= 0 and s + 1 + t <= 16");
    }
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < s; ++i) {
        rel.emplace_back(i, s);
    }
    for (int j = 0; j < t; ++j) {
        rel.emplace_back(s, s + 1 + j);
    }
    return Poset(s + 1 + t, rel);
}

Poset poset_from_bipartite(const PatternGraph& g, PosetSide side) {
    const auto sides = bipartition(g);
    if (!sides) {
        throw std::invalid_argument("pattern is not bipartite");
    }
    return poset_from_bipartite(g, side == PosetSide::A ? sides->side_a : sides->side_b);
}

Poset poset_from_bipartite(const PatternGraph& g, VertexSet upper_side) {
    const Bipartition sides = bipartition_with_side(g, upper_side);
    std::vector<std::pair<int, int>> rel;
    for (auto [u, v] : g.edges()) {
        if ((sides.side_a >> v) & 1u) {
            rel.emplace_back(u, v);
        } else {
            rel.emplace_back(v, u);
        }
    }
    return Poset(g.vertex_count(), rel);
}

Poset dual(const Poset& p) {
    std::vector<std::pair<int, int>> rel;
    for (auto [a, b] : p.relations()) {
        rel.emplace_back(b, a);
    }
    return Poset(p.size(), rel);
}

int height(const Poset& p) {
    // Longest chain ending at each element; elements processed by number of predecessors.
    std::vector<int> order(static_cast<std::size_t>(p.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return count(p.below(a)) < count(p.below(b)); });
    std::vector<int> longest(static_cast<std::size_t>(p.size()), 1);
    int best = 0;
    for (int e : order) {
        for (int q = 0; q < p.size(); ++q) {
            if (p.less(q, e)) {
                longest[static_cast<std::size_t>(e)] =
                    std::max(longest[static_cast<std::size_t>(e)], longest[static_cast<std::size_t>(q)] + 1);
            }
        }
        best = std::max(best, longest[static_cast<std::size_t>(e)]);
    }
    return best;
}

bool is_tree_poset(const Poset& p) {
    if (p.size() == 0) {
        return false;
    }
    const auto arcs = p.covers();
    if (static_cast<int>(arcs.size()) != p.size() - 1) {
        return false;
    }
    // size-1 edges plus connectivity means a tree.
    std::vector<int> parent(static_cast<std::size_t>(p.size()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        }
        return x;
    };
    int merged = 0;
    for (auto [a, b] : arcs) {
        const int ra = find(a);
        const int rb = find(b);
        if (ra != rb) {
            parent[static_cast<std::size_t>(ra)] = rb;
            ++merged;
        }
    }
    return merged == p.size() - 1;
}

bool is_isomorphic(const Poset& a, const Poset& b) {
    if (a.size() != b.size() || a.relations().size() != b.relations().size()) {
        return false;
    }
    const int n = a.size();
    auto signature = [](const Poset& p, int e) { return std::pair{count(p.below(e)), count(p.above(e))}; };
    std::vector<int> map(static_cast<std::size_t>(n), -1);
    ElementSet used = 0;
    auto extend = [&](auto&& self, int e) -> bool {
        if (e == n) {
            return true;
        }
        for (int f = 0; f < n; ++f) {
            if ((used >> f) & 1u || signature(a, e) != signature(b, f)) {
                continue;
            }
            bool ok = true;
            for (int q = 0; q < e && ok; ++q) {
                const int fq = map[static_cast<std::size_t>(q)];
                ok = a.less(q, e) == b.less(fq, f) && a.less(e, q) == b.less(f, fq);
            }
            if (!ok) {
                continue;
            }
            map[static_cast<std::size_t>(e)] = f;
            used = static_cast<ElementSet>(used | bit(f));
            if (self(self, e + 1)) {
                return true;
            }
            used = static_cast<ElementSet>(used & ~bit(f));
        }
        return false;
    };
    return extend(extend, 0);
}

namespace {

int parse_suffix(std::string_view s, std::string_view whole) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("malformed poset name '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Poset parse_poset_name(std::string_view name) {
    if (name == "V") {
        return vee();
    }
    if (name == "Lambda") {
        return wedge();
    }
    if (name == "butterfly") {
        return butterfly();
    }
    if (name.starts_with("antichain")) {
        return antichain(parse_suffix(name.substr(9), name));
    }
    if (name.starts_with("chain")) {
        return chain(parse_suffix(name.substr(5), name));
    }
    if (name.starts_with("crown")) {
        return crown(parse_suffix(name.substr(5), name));
    }
    if (name.starts_with("K")) {
        const auto parts = detail::split(name.substr(1), ',');
        if (parts.size() == 3 && parts[1] == "1") {
            return complete_three_level(parse_suffix(parts[0], name), parse_suffix(parts[2], name));
        }
    }
    throw std::invalid_argument("unknown poset name '" + std::string(name) + "'");
}

Poset parse_poset(std::string_view text) {
    const auto lines = detail::content_lines(text);
    if (lines.empty()) {
        throw ParseError(1, "missing header 'e <size>'");
    }
    const auto header = detail::tokens(lines.front().text);
    if (header.size() != 2 || header[0] != "e") {
        throw ParseError(lines.front().number, "expected header 'e <size>'");
    }
    const int size = detail::parse_int(header[1], lines.front().number);
    std::vector<std::pair<int, int>> rel;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto tok = detail::tokens(lines[i].text);
        if (tok.size() != 3 || tok[1] != "<") {
            throw ParseError(lines[i].number, "expected a relation 'u < v'");
        }
        rel.emplace_back(detail::parse_int(tok[0], lines[i].number), detail::parse_int(tok[2], lines[i].number));
    }
    try {
        return Poset(size, rel);
    } catch (const std::invalid_argument& e) {
        throw ParseError(lines.front().number, e.what());
    }
}

std::string format_poset(const Poset& p) {
    std::ostringstream out;
    out << "e " << p.size() << '\n';
    for (auto [a, b] : p.covers()) {
        out << a << " < " << b << '\n';
    }
    return out.str();
}

Poset load_poset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open poset file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_poset(buffer.str());
}

Poset resolve_poset(const std::string& spec) {
    std::ifstream probe(spec);
    if (probe) {
        return load_poset_file(spec);
    }
    return parse_poset_name(spec);
}

bool is_poset_copy(const PosetCopy& copy, const Poset& p) {
    if (copy.image.size() != static_cast<std::size_t>(p.size())) {
        return false;
    }
    std::vector<SubsetMask> sorted = copy.image;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        return false;
    }
    for (auto [a, b] : p.relations()) {
        if (!copy.image[static_cast<std::size_t>(a)].subset_of(copy.image[static_cast<std::size_t>(b)])) {
            return false;
        }
    }
    return true;
}

namespace {

/// Greedy placement order. With as_linear_extension, an element is only eligible once
/// all its predecessors are placed. Among eligible elements pick the one with the most
/// relations to placed elements, ties by label.
std::vector<int> placement_order(const Poset& p, std::optional<int> first, bool as_linear_extension) {
    std::vector<int> order;
    ElementSet placed = 0;
    if (first) {
        order.push_back(*first);
        placed = bit(*first);
    }
    while (static_cast<int>(order.size()) < p.size()) {
        int best = -1;
        int best_links = -1;
        for (int e = 0; e < p.size(); ++e) {
            if ((placed >> e) & 1u) {
                continue;
            }
            if (as_linear_extension && (p.below(e) & ~placed) != 0) {
                continue;
            }
            const int links = count(static_cast<ElementSet>((p.above(e) | p.below(e)) & placed));
            if (links > best_links) {
                best = e;
                best_links = links;
            }
        }
        order.push_back(best);
        placed = static_cast<ElementSet>(placed | bit(best));
    }
    return order;
}

/// Backtracking weak-copy search over host sets.
class CopySearch {
public:
    CopySearch(const Poset& p, std::span<const SubsetMask> host, std::vector<int> order)
        : p_(p), host_(host), order_(std::move(order)), image_(static_cast<std::size_t>(p.size())), used_(host.size(), 0) {}

    /// Optional per-host-set counts of strict supersets / subsets in the host for pruning.
    void set_pruning(std::vector<int> up, std::vector<int> down) {
        up_ = std::move(up);
        down_ = std::move(down);
    }

    bool run(std::optional<std::size_t> anchor) {
        if (static_cast<std::size_t>(p_.size()) > host_.size()) {
            return false;
        }
        anchor_ = anchor;
        return extend(0);
    }

    [[nodiscard]] const std::vector<SubsetMask>& image() const noexcept { return image_; }

private:
    bool fits(int e, SubsetMask f) const {
        for (std::size_t d = 0; d < placed_; ++d) {
            const int q = order_[d];
            const SubsetMask g = image_[static_cast<std::size_t>(q)];
            if (p_.less(q, e) && !g.subset_of(f)) {
                return false;
            }
            if (p_.less(e, q) && !f.subset_of(g)) {
                return false;
            }
        }
        return true;
    }

    bool try_host(std::size_t depth, int e, std::size_t h) {
        if (used_[h]) {
            return false;
        }
        if (!up_.empty() && (up_[h] < count(p_.above(e)) || down_[h] < count(p_.below(e)))) {
            return false;
        }
        const SubsetMask f = host_[h];
        if (!fits(e, f)) {
            return false;
        }
        image_[static_cast<std::size_t>(e)] = f;
        used_[h] = 1;
        ++placed_;
        if (extend(depth + 1)) {
            return true;
        }
        --placed_;
        used_[h] = 0;
        return false;
    }

    bool extend(std::size_t depth) {
        if (depth == order_.size()) {
            return true;
        }
        const int e = order_[depth];
        if (depth == 0 && anchor_) {
            return try_host(depth, e, *anchor_);
        }
        for (std::size_t h = 0; h < host_.size(); ++h) {
            if (try_host(depth, e, h)) {
                return true;
            }
        }
        return false;
    }

    const Poset& p_;
    std::span<const SubsetMask> host_;
    std::vector<int> order_;
    std::vector<SubsetMask> image_;
    std::vector<char> used_;
    std::vector<int> up_;
    std::vector<int> down_;
    std::size_t placed_ = 0;
    std::optional<std::size_t> anchor_;
};

}  // namespace

std::optional<PosetCopy> contains_poset_copy(const Family& family, const Poset& p) {
    const auto& host = family.members();
    std::vector<int> up(host.size(), 0);
    std::vector<int> down(host.size(), 0);
    for (std::size_t i = 0; i < host.size(); ++i) {
        for (std::size_t j = 0; j < host.size(); ++j) {
            if (i != j && host[i].subset_of(host[j])) {
                ++up[i];
                ++down[j];
            }
        }
    }
    CopySearch search(p, host, placement_order(p, std::nullopt, true));
    search.set_pruning(std::move(up), std::move(down));
    if (!search.run(std::nullopt)) {
        return std::nullopt;
    }
    return PosetCopy{search.image()};
}

IncrementalPosetChecker::IncrementalPosetChecker(std::vector<Poset> forbidden) : forbidden_(std::move(forbidden)) {
    for (const Poset& p : forbidden_) {
        auto& orders = anchored_orders_.emplace_back();
        for (int e = 0; e < p.size(); ++e) {
            orders.push_back(placement_order(p, e, false));
        }
    }
}

bool IncrementalPosetChecker::push(SubsetMask set) {
    stack_.push_back(set);
    if (violated_at_ == kNone && copy_through(stack_.size() - 1)) {
        violated_at_ = stack_.size() - 1;
    }
    return currently_free();
}

void IncrementalPosetChecker::pop() {
    if (stack_.empty()) {
        throw std::logic_error("pop on an empty checker");
    }
    stack_.pop_back();
    if (violated_at_ == stack_.size()) {
        violated_at_ = kNone;
    }
}

bool IncrementalPosetChecker::copy_through(std::size_t anchor) const {
    for (std::size_t i = 0; i < forbidden_.size(); ++i) {
        const Poset& p = forbidden_[i];
        if (p.size() == 0) {
            return true;
        }
        for (const auto& order : anchored_orders_[i]) {
            CopySearch search(p, stack_, order);
            if (search.run(anchor)) {
                return true;
            }
        }
    }
    return false;
}

std::unique_ptr<FamilyOracle> IncrementalPosetChecker::fresh() const {
    return std::make_unique<IncrementalPosetChecker>(forbidden_);
}

namespace {

bool band_is_free(const Family& band, const std::vector<Poset>& forbidden) {
    return std::none_of(forbidden.begin(), forbidden.end(),
                        [&](const Poset& p) { return contains_poset_copy(band, p).has_value(); });
}

}  // namespace

LaResult la(GroundSize n, const std::vector<Poset>& forbidden, bool symmetric, const SearchBudget& budget) {
    if (n.value() > kMaxExactLaGround) {
        throw std::invalid_argument("la: exact mode supports n <= 5, got n=" + std::to_string(n.value()));
    }
    // Seed with the largest forbidden-free band of consecutive levels (symmetric about
    // n/2 in symmetric mode).
    std::optional<Family> seed;
    for (int lo = 0; lo <= n.value(); ++lo) {
        for (int hi = lo; hi <= n.value(); ++hi) {
            if (symmetric && lo + hi != n.value()) {
                continue;
            }
            Family band = level_slice(n, lo, hi);
            if ((!seed || band.size() > seed->size()) && band_is_free(band, forbidden)) {
                seed = std::move(band);
            }
        }
    }

    const IncrementalPosetChecker oracle(forbidden);
    EngineOptions options;
    options.symmetric = symmetric;
    options.budget = budget;
    options.seed = seed;
    EngineResult r = max_family_avoiding(Family::cube(n), oracle, options);
    return LaResult{r.value, std::move(r.witness), r.exact, r.upper_bound};
}

EResult e_of_poset(const Poset& p, int n_max) {
    if (n_max < 1 || n_max > 12) {
        throw std::invalid_argument("e_of_poset: n_max must be in [1, 12]");
    }
    for (int k = 1; k <= n_max; ++k) {
        for (int n = 1; n <= n_max; ++n) {
            const GroundSize ground(n);
            for (int j = 0; j < n; ++j) {
                const int lo = j + 1;
                const int hi = std::min(j + k, n);
                if (auto copy = contains_poset_copy(level_slice(ground, lo, hi), p)) {
                    return EResult{k - 1, std::move(copy), n, lo, hi};
                }
            }
        }
    }
    return EResult{n_max, std::nullopt, 0, 0, 0};
}

std::pair<int, int> sym_band_levels(GroundSize n) {
    // |L - n/2| <= n^{2/3}  <=>  |2L - n|^3 <= 8 n^2, exact in integers.
    const long long nn = n.value();
    auto inside = [nn](int level) {
        const long long d = std::llabs(2LL * level - nn);
        return d * d * d <= 8 * nn * nn;
    };
    int lo = 0;
    while (!inside(lo)) {
        ++lo;
    }
    int hi = n.value();
    while (!inside(hi)) {
        --hi;
    }
    return {lo, hi};
}

Family extract_sym_band(const Family& family) {
    const GroundSize n = family.ground();
    const auto [lo, hi] = sym_band_levels(n);
    std::vector<SubsetMask> out;
    for (SubsetMask f : family) {
        if (f.size() >= lo && f.size() <= hi && family.contains(complement(f, n))) {
            out.push_back(f);
        }
    }
    return Family(n, std::move(out));
}

GraphWitness poset_copy_to_graph_copy(const PosetCopy& copy, const PatternGraph& g, const Bipartition& sides,
                                      const Family& host) {
    const Poset p = poset_from_bipartite(g, sides.side_a);
    if (!is_poset_copy(copy, p)) {
        throw std::invalid_argument("not a copy of the poset P_{G,A} for the given sides");
    }
    if (!host.complement_closed()) {
        throw std::invalid_argument("host family is not complement-closed");
    }
    const GroundSize n = host.ground();
    for (SubsetMask f : copy.image) {
        if (!host.contains(f)) {
            throw std::invalid_argument("copy uses set " + to_string(f) + " outside the host");
        }
    }
    const auto on_a = [&](int v) { return ((sides.side_a >> v) & 1u) != 0; };
    for (int a = 0; a < g.vertex_count(); ++a) {
        if (!on_a(a)) {
            continue;
        }
        const SubsetMask flipped = complement(copy.image[static_cast<std::size_t>(a)], n);
        for (int b = 0; b < g.vertex_count(); ++b) {
            if (!on_a(b) && copy.image[static_cast<std::size_t>(b)] == flipped) {
                throw CollisionError("set " + to_string(copy.image[static_cast<std::size_t>(a)]) +
                                     " is on side A while its complement is on side B");
            }
        }
    }
    std::vector<SubsetMask> images(copy.image.size());
    for (int v = 0; v < g.vertex_count(); ++v) {
        const SubsetMask f = copy.image[static_cast<std::size_t>(v)];
        images[static_cast<std::size_t>(v)] = on_a(v) ? complement(f, n) : f;
    }
    if (!is_graph_copy(images, g)) {
        throw std::logic_error("converted images do not form a copy of the pattern");
    }
    GraphWitness witness;
    for (SubsetMask f : images) {
        witness.map.push_back(host.index_of(f));
    }
    return witness;
}

}  // namespace knv
