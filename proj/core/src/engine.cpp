#include "knv/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace knv {

namespace {

constexpr std::size_t kSplitDepth = 8;
constexpr std::uint64_t kNodeBatch = 1024;

struct Item {
    std::vector<SubsetMask> sets;
};

std::uint64_t make_key(std::size_t value, std::size_t index) {
    return (static_cast<std::uint64_t>(value) << 32) | (0xFFFFFFFFull - index);
}

struct Subproblem {
    std::vector<std::size_t> chosen_items;
    std::size_t value = 0;
    std::size_t bound = 0;
};

class Search {
public:
    Search(std::vector<Item> items, const FamilyOracle& prototype, const EngineOptions& options, GroundSize n)
        : items_(std::move(items)), prototype_(prototype), options_(options), n_(n) {
        suffix_weight_.assign(items_.size() + 1, 0);
        offsets_.assign(items_.size() + 1, 0);
        for (std::size_t i = 0; i < items_.size(); ++i) {
            for (SubsetMask f : items_[i].sets) {
                flat_.push_back(f);
            }
            offsets_[i + 1] = flat_.size();
        }
        for (std::size_t i = items_.size(); i-- > 0;) {
            suffix_weight_[i] = suffix_weight_[i + 1] + items_[i].sets.size();
        }
        start_ = std::chrono::steady_clock::now();
    }

    EngineResult run() {
        if (options_.seed) {
            best_witness_ = options_.seed->members();
            best_key_.store(make_key(best_witness_.size(), 0));
        } else {
            best_key_.store(make_key(0, 0));
        }

        generate_subproblems();
        const unsigned threads = std::max(1u, options_.budget.threads);
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back([this] { worker(); });
            }
        }

        EngineResult result{.witness = Family(n_, best_witness_)};
        result.value = best_witness_.size();
        result.nodes = nodes_.load();
        result.exact = !stopped_.load();
        result.upper_bound = result.value;
        if (!result.exact) {
            for (std::size_t s = 0; s < subproblems_.size(); ++s) {
                if (!finished_[s]) {
                    result.upper_bound = std::max(result.upper_bound, subproblems_[s].bound);
                }
            }
        }
        return result;
    }

private:
    struct Worker {
        std::unique_ptr<FamilyOracle> oracle;
        std::vector<SubsetMask> chosen;
        std::size_t index = 0;
        std::uint64_t pending_nodes = 0;
        bool aborted = false;
    };

    std::size_t bound_at(std::size_t item, std::size_t value, std::span<const SubsetMask> chosen) const {
        std::size_t bound = value + suffix_weight_[item];
        if (options_.extra_bound) {
            const std::span<const SubsetMask> rest(flat_.data() + offsets_[item], flat_.size() - offsets_[item]);
            bound = std::min(bound, options_.extra_bound(chosen, rest));
        }
        return bound;
    }

    bool try_include(FamilyOracle& oracle, std::vector<SubsetMask>& chosen, const Item& item) const {
        std::size_t pushed = 0;
        bool ok = true;
        for (SubsetMask f : item.sets) {
            ++pushed;
            chosen.push_back(f);
            if (!oracle.push(f)) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            for (; pushed > 0; --pushed) {
                oracle.pop();
                chosen.pop_back();
            }
        }
        return ok;
    }

    void undo_include(FamilyOracle& oracle, std::vector<SubsetMask>& chosen, const Item& item) const {
        for (std::size_t k = 0; k < item.sets.size(); ++k) {
            oracle.pop();
            chosen.pop_back();
        }
    }

    void generate_subproblems() {
        const std::size_t depth = std::min(kSplitDepth, items_.size());
        auto oracle = prototype_.fresh();
        std::vector<SubsetMask> chosen;
        std::vector<std::size_t> chosen_items;
        const std::uint64_t seed_key = best_key_.load();
        // Subproblem indices start at 1; the seed owns index 0.
        auto recurse = [&](auto&& self, std::size_t item, std::size_t value) -> void {
            const std::size_t bound = bound_at(item, value, chosen);
            if (options_.budget.bound_pruning && make_key(bound, subproblems_.size() + 1) <= seed_key) {
                return;
            }
            if (item == depth) {
                subproblems_.push_back({chosen_items, value, bound});
                return;
            }
            if (try_include(*oracle, chosen, items_[item])) {
                chosen_items.push_back(item);
                self(self, item + 1, value + items_[item].sets.size());
                chosen_items.pop_back();
                undo_include(*oracle, chosen, items_[item]);
            }
            self(self, item + 1, value);
        };
        recurse(recurse, 0, 0);
        finished_ = std::vector<std::atomic<bool>>(subproblems_.size());
    }

    void worker() {
        Worker w;
        w.oracle = prototype_.fresh();
        const std::size_t depth = std::min(kSplitDepth, items_.size());
        while (!stopped_.load(std::memory_order_relaxed)) {
            const std::size_t s = next_.fetch_add(1);
            if (s >= subproblems_.size()) {
                break;
            }
            const Subproblem& sp = subproblems_[s];
            w.index = s + 1;
            w.aborted = false;
            for (std::size_t item : sp.chosen_items) {
                if (!try_include(*w.oracle, w.chosen, items_[item])) {
                    throw std::logic_error("subproblem prefix is infeasible on replay");
                }
            }
            dfs(w, depth, sp.value);
            for (auto it = sp.chosen_items.rbegin(); it != sp.chosen_items.rend(); ++it) {
                undo_include(*w.oracle, w.chosen, items_[*it]);
            }
            if (!w.aborted) {
                finished_[s].store(true);
            }
        }
        nodes_.fetch_add(w.pending_nodes);
    }

    bool out_of_budget(Worker& w) {
        if (++w.pending_nodes < kNodeBatch) {
            return stopped_.load(std::memory_order_relaxed);
        }
        const std::uint64_t total = nodes_.fetch_add(w.pending_nodes) + w.pending_nodes;
        w.pending_nodes = 0;
        const auto& budget = options_.budget;
        if (budget.max_nodes != 0 && total >= budget.max_nodes) {
            stopped_.store(true);
        }
        if (budget.time_limit.count() != 0 && std::chrono::steady_clock::now() - start_ >= budget.time_limit) {
            stopped_.store(true);
        }
        return stopped_.load(std::memory_order_relaxed);
    }

    void publish(const Worker& w, std::size_t value) {
        const std::uint64_t key = make_key(value, w.index);
        if (key <= best_key_.load()) {
            return;
        }
        std::lock_guard lock(best_mutex_);
        if (key > best_key_.load()) {
            best_witness_ = w.chosen;
            best_key_.store(key);
        }
    }

    void dfs(Worker& w, std::size_t item, std::size_t value) {
        if (out_of_budget(w)) {
            w.aborted = true;
            return;
        }
        publish(w, value);
        if (item == items_.size()) {
            return;
        }
        if (options_.budget.bound_pruning) {
            const std::size_t bound = bound_at(item, value, w.chosen);
            if (make_key(bound, w.index) <= best_key_.load(std::memory_order_relaxed)) {
                return;
            }
        }
        if (try_include(*w.oracle, w.chosen, items_[item])) {
            dfs(w, item + 1, value + items_[item].sets.size());
            undo_include(*w.oracle, w.chosen, items_[item]);
            if (w.aborted) {
                return;
            }
        }
        dfs(w, item + 1, value);
    }

    std::vector<Item> items_;
    const FamilyOracle& prototype_;
    const EngineOptions& options_;
    GroundSize n_;
    std::vector<SubsetMask> flat_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> suffix_weight_;
    std::vector<Subproblem> subproblems_;
    std::vector<std::atomic<bool>> finished_;
    std::atomic<std::size_t> next_{0};
    std::atomic<std::uint64_t> best_key_{0};
    std::mutex best_mutex_;
    std::vector<SubsetMask> best_witness_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> stopped_{false};
    std::chrono::steady_clock::time_point start_;
};

int level_distance(SubsetMask f, GroundSize n) { return std::abs(2 * f.size() - n.value()); }

}  // namespace

std::vector<SubsetMask> branching_order(const Family& ground) {
    std::vector<SubsetMask> order = ground.members();
    const GroundSize n = ground.ground();
    std::stable_sort(order.begin(), order.end(), [n](SubsetMask a, SubsetMask b) {
        return level_distance(a, n) < level_distance(b, n);
    });
    return order;
}

EngineResult max_family_avoiding(const Family& ground, const FamilyOracle& oracle, const EngineOptions& options) {
    const GroundSize n = ground.ground();
    std::vector<Item> items;
    if (options.symmetric) {
        if (!ground.complement_closed()) {
            throw std::invalid_argument("symmetric search needs a complement-closed ground family");
        }
        for (SubsetMask f : branching_order(ground)) {
            const SubsetMask c = complement(f, n);
            if (f < c) {
                items.push_back({{f, c}});
            }
        }
    } else {
        for (SubsetMask f : branching_order(ground)) {
            items.push_back({{f}});
        }
    }

    if (options.seed) {
        const Family& seed = *options.seed;
        if (seed.ground() != n || !seed.subset_of(ground)) {
            throw std::invalid_argument("seed family is not contained in the ground family");
        }
        if (options.symmetric && !seed.complement_closed()) {
            throw std::invalid_argument("seed family is not complement-closed");
        }
        auto check = oracle.fresh();
        for (SubsetMask f : seed) {
            if (!check->push(f)) {
                throw std::invalid_argument("seed family violates the oracle");
            }
        }
    }

    Search search(std::move(items), oracle, options, n);
    return search.run();
}

}  // namespace knv
