#ifndef TRIFREE_PUZZLE_SEARCH_HPP
#define TRIFREE_PUZZLE_SEARCH_HPP

#include <trifree/dotpuzzle.hpp>

#include <random>
#include <unordered_map>

namespace trifree {

enum class SearchStrategy { GreedyRounds, RandomizedRestart, DfsExact };

inline SearchStrategy search_strategy_from_string(const std::string &s)
{
    if (s == "greedy-rounds")
        return SearchStrategy::GreedyRounds;
    if (s == "randomized-restart")
        return SearchStrategy::RandomizedRestart;
    if (s == "dfs-exact")
        return SearchStrategy::DfsExact;
    throw invalid_input("unknown strategy '" + s + "' (greedy-rounds, randomized-restart, dfs-exact)");
}

struct SearchResult {
    PuzzleState best;
    bool exact = false;     // dfs-exact completed within budget
    bool exhausted = false; // budget ran out
    std::uint64_t nodes = 0;
};

namespace detail {

// Builds one round greedily from `order`, skipping killed points and points
// in same-round conflict with what was already taken.
inline std::vector<GridPoint> greedy_round(const PuzzleState &s, const std::vector<std::size_t> &order)
{
    const auto &t = s.table();
    const auto &g = s.grid();
    std::vector<std::size_t> taken;
    for (auto i : order) {
        if (s.killed_bits().test(i))
            continue;
        bool ok = true;
        for (auto j : taken)
            if (s.forbidden().contains(*t.same(i, j))) {
                ok = false;
                break;
            }
        if (ok)
            taken.push_back(i);
    }
    std::vector<GridPoint> out;
    for (auto i : taken)
        out.push_back(g.point(i));
    return out;
}

// Survivors sorted by how many other survivors they would kill.
inline std::vector<std::size_t> cheap_first(const PuzzleState &s, std::mt19937_64 *rng)
{
    const auto &t = s.table();
    const auto n = s.grid().size();
    std::vector<std::pair<double, std::size_t>> keyed;
    for (std::size_t i = 0; i < n; ++i) {
        if (s.killed_bits().test(i))
            continue;
        auto k = t.kills(s.forbidden(), i);
        k.and_not(s.killed_bits());
        double key = static_cast<double>(k.count());
        if (rng)
            key += std::uniform_real_distribution<double>(0.0, 1.5)(*rng);
        keyed.emplace_back(key, i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::size_t> out;
    for (auto &[k, i] : keyed)
        out.push_back(i);
    return out;
}

inline PuzzleState play_greedy(PuzzleState s, std::mt19937_64 *rng)
{
    while (!s.finished())
        s.play_round(greedy_round(s, cheap_first(s, rng)));
    return s;
}

struct BitsetHash {
    std::size_t operator()(const std::pair<std::vector<std::uint64_t>, int> &k) const noexcept
    {
        std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(k.second);
        for (auto w : k.first) {
            h ^= w;
            h *= 1099511628211ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

// Exact maximum over all histories. The future only depends on the killed
// set and the number of rounds left, so values are memoised on that pair.
class ExactSearch {
public:
    ExactSearch(const PuzzleState &start, std::uint64_t budget) : start_(start), budget_(budget) {}

    std::optional<PuzzleState> run()
    {
        value(start_.killed_bits(), start_.grid().rounds() - start_.rounds_played());
        if (aborted_)
            return std::nullopt;
        // Rebuild a witness by following memoised optimal choices.
        PuzzleState s = start_;
        while (!s.finished()) {
            const int left = s.grid().rounds() - s.rounds_played();
            const auto &e = memo_.at({s.killed_bits().words(), left});
            std::vector<GridPoint> q;
            e.choice.for_each([&](std::size_t i) { q.push_back(s.grid().point(i)); });
            s.play_round(q);
        }
        return s;
    }

    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    struct Entry {
        std::size_t value;
        Bitset choice;
    };

    std::size_t value(const Bitset &killed, int left)
    {
        if (left == 0 || aborted_)
            return 0;
        const auto key = std::make_pair(killed.words(), left);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second.value;

        const auto &t = start_.table();
        const auto x = start_.forbidden();
        std::vector<std::size_t> cand;
        for (std::size_t i = 0; i < start_.grid().size(); ++i)
            if (!killed.test(i))
                cand.push_back(i);

        std::size_t best = 0;
        bool have = false;
        Bitset best_choice(start_.grid().size());
        Bitset chosen(start_.grid().size());
        Bitset next_killed = killed;
        // Enumerate same-round independent subsets of the survivors in
        // lexicographic include-first order; ties keep the first found.
        auto rec = [&](auto &&self, std::size_t k, std::size_t count, const Bitset &nk) -> void {
            if (aborted_)
                return;
            if (k == cand.size()) {
                if (budget_ == 0) {
                    aborted_ = true;
                    return;
                }
                --budget_;
                ++nodes_;
                const std::size_t v = count + value(nk, left - 1);
                if (!have || v > best) {
                    have = true;
                    best = v;
                    best_choice = chosen;
                }
                return;
            }
            const std::size_t i = cand[k];
            bool ok = true;
            chosen.for_each([&](std::size_t j) {
                if (ok && x.contains(*t.same(i, j)))
                    ok = false;
            });
            if (ok) {
                chosen.set(i);
                Bitset nk2 = nk;
                nk2 |= t.kills(x, i);
                self(self, k + 1, count + 1, nk2);
                chosen.reset(i);
            }
            self(self, k + 1, count, nk);
        };
        rec(rec, 0, 0, next_killed);
        if (!aborted_)
            memo_.emplace(key, Entry{best, best_choice});
        return best;
    }

    PuzzleState start_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    std::unordered_map<std::pair<std::vector<std::uint64_t>, int>, Entry, BitsetHash> memo_;
};

} // namespace detail

/// Plays the remaining rounds of `start` by the chosen strategy.
///  - greedy-rounds: each round takes survivors in order of how few
///    survivors they kill.
///  - randomized-restart: `budget` randomised greedy runs from `seed`,
///    keeping the best (ties: earliest).
///  - dfs-exact: exhaustive with memoisation; `budget` caps the number of
///    complete round choices examined. On exhaustion the greedy result is
///    returned and flagged.
inline SearchResult search_best(const PuzzleState &start, SearchStrategy strategy, std::uint64_t budget,
                                std::uint64_t seed = 0)
{
    switch (strategy) {
    case SearchStrategy::GreedyRounds:
        return {detail::play_greedy(start, nullptr), false, false, 1};
    case SearchStrategy::RandomizedRestart: {
        std::mt19937_64 rng(seed);
        PuzzleState best = detail::play_greedy(start, nullptr);
        const std::uint64_t runs = std::max<std::uint64_t>(budget, 1);
        for (std::uint64_t r = 0; r < runs; ++r) {
            auto s = detail::play_greedy(start, &rng);
            if (s.score() > best.score())
                best = std::move(s);
        }
        return {best, false, false, runs};
    }
    case SearchStrategy::DfsExact: {
        detail::ExactSearch search(start, budget);
        if (auto s = search.run())
            return {*s, true, false, search.nodes()};
        return {detail::play_greedy(start, nullptr), false, true, search.nodes()};
    }
    }
    throw std::logic_error("unreachable");
}

inline SearchResult search_best(const Grid &grid, ForbiddenSet x, SearchStrategy strategy, std::uint64_t budget,
                                std::uint64_t seed = 0)
{
    return search_best(PuzzleState(grid, x), strategy, budget, seed);
}

} // namespace trifree

#endif
