#ifndef TRIFREE_MIS_HPP
#define TRIFREE_MIS_HPP

#include <trifree/bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace trifree {

struct MisOptions {
    std::uint64_t node_budget = 100'000'000;
    /// Return the lexicographically smallest optimal vertex set.
    bool canonical_witness = true;
};

struct MisResult {
    std::size_t optimum = 0;       // size of the witness
    std::size_t upper_bound = 0;   // equals optimum when exact
    std::vector<std::size_t> witness; // sorted vertex ids
    std::uint64_t nodes = 0;
    bool exact = true;
};

namespace detail {

/// Maximum clique in the complement of a conflict graph restricted to a
/// vertex subset, i.e. maximum independent set of that induced subgraph.
/// Bitset branch and bound with greedy colouring bounds (MCQ/BBMC style).
class CliqueSearch {
public:
    CliqueSearch(const Graph &g, const std::vector<std::size_t> &verts) : n_(verts.size())
    {
        // Degeneracy order of the complement: peel minimum-degree vertices,
        // then number the survivors of the deepest core first.
        std::vector<std::size_t> deg(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            std::size_t d = 0;
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j && !g.adjacent(verts[i], verts[j]))
                    ++d;
            deg[i] = d;
        }
        std::vector<char> gone(n_, 0);
        std::vector<std::size_t> peel;
        peel.reserve(n_);
        for (std::size_t step = 0; step < n_; ++step) {
            std::size_t pick = n_;
            for (std::size_t i = 0; i < n_; ++i)
                if (!gone[i] && (pick == n_ || deg[i] < deg[pick]))
                    pick = i;
            gone[pick] = 1;
            peel.push_back(pick);
            for (std::size_t j = 0; j < n_; ++j)
                if (!gone[j] && !g.adjacent(verts[pick], verts[j]))
                    --deg[j];
        }
        std::reverse(peel.begin(), peel.end());
        local_to_global_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i)
            local_to_global_[i] = verts[peel[i]];

        comp_.assign(n_, Bitset(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (!g.adjacent(local_to_global_[i], local_to_global_[j])) {
                    comp_[i].set(j);
                    comp_[j].set(i);
                }
    }

    /// Searches for a set larger than `floor`; stops early once one of size
    /// `stop_at` is found. Returns false if the node budget ran out.
    bool run(std::size_t floor, std::size_t stop_at, std::uint64_t &budget)
    {
        best_.clear();
        best_size_ = floor;
        stop_at_ = stop_at;
        budget_ = &budget;
        aborted_ = false;
        found_stop_ = false;
        Bitset p(n_);
        p.set_all();
        current_.clear();
        root_bound_ = n_;
        if (n_ > 0) {
            std::vector<std::size_t> order, colour;
            colour_sort(p, order, colour);
            root_bound_ = colour.empty() ? 0 : colour.back();
        }
        expand(p);
        return !aborted_;
    }

    std::vector<std::size_t> best_global() const
    {
        std::vector<std::size_t> out;
        for (auto v : best_)
            out.push_back(local_to_global_[v]);
        std::sort(out.begin(), out.end());
        return out;
    }
    std::size_t best_size() const noexcept { return best_.size(); }
    std::size_t root_bound() const noexcept { return root_bound_; }
    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    void colour_sort(const Bitset &p, std::vector<std::size_t> &order, std::vector<std::size_t> &colour) const
    {
        Bitset u = p;
        std::size_t k = 0;
        while (u.any()) {
            ++k;
            Bitset q = u;
            for (std::size_t v = q.next(); v < n_; v = q.next(v + 1)) {
                u.reset(v);
                q.and_not(comp_[v]);
                order.push_back(v);
                colour.push_back(k);
            }
        }
    }

    void expand(Bitset p)
    {
        std::vector<std::size_t> order, colour;
        order.reserve(p.count());
        colour.reserve(order.capacity());
        colour_sort(p, order, colour);
        for (std::size_t i = order.size(); i-- > 0;) {
            if (aborted_ || found_stop_)
                return;
            if (current_.size() + colour[i] <= best_size_)
                return;
            if (*budget_ == 0) {
                aborted_ = true;
                return;
            }
            --*budget_;
            ++nodes_;
            const std::size_t v = order[i];
            current_.push_back(v);
            Bitset np = p & comp_[v];
            if (np.none()) {
                if (current_.size() > best_size_) {
                    best_ = current_;
                    best_size_ = current_.size();
                    if (best_size_ >= stop_at_)
                        found_stop_ = true;
                }
            } else {
                expand(std::move(np));
            }
            current_.pop_back();
            p.reset(v);
        }
    }

    std::size_t n_;
    std::vector<std::size_t> local_to_global_;
    std::vector<Bitset> comp_;
    std::vector<std::size_t> current_, best_;
    std::size_t best_size_ = 0, stop_at_ = 0, root_bound_ = 0;
    std::uint64_t *budget_ = nullptr;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false, found_stop_ = false;
};

inline std::vector<std::vector<std::size_t>> components(const Graph &g)
{
    const std::size_t n = g.order();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        std::vector<std::size_t> comp{s};
        seen[s] = 1;
        for (std::size_t k = 0; k < comp.size(); ++k)
            g.neighbours(comp[k]).for_each([&](std::size_t u) {
                if (!seen[u]) {
                    seen[u] = 1;
                    comp.push_back(u);
                }
            });
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

} // namespace detail

/// Exact maximum independent set. Connected components are solved
/// separately; isolated vertices are taken outright. When the node budget
/// runs out the best set found is returned with exact = false and a
/// colouring upper bound.
inline MisResult max_independent_set(const Graph &g, const MisOptions &opt = {})
{
    MisResult res;
    std::uint64_t budget = opt.node_budget;

    for (const auto &comp : detail::components(g)) {
        if (comp.size() == 1) {
            res.witness.push_back(comp[0]);
            ++res.upper_bound;
            continue;
        }
        detail::CliqueSearch search(g, comp);
        const bool done = search.run(0, comp.size(), budget);
        res.nodes += search.nodes();
        auto best = search.best_global();
        if (!done) {
            res.exact = false;
            res.upper_bound += search.root_bound();
            res.witness.insert(res.witness.end(), best.begin(), best.end());
            continue;
        }
        res.upper_bound += best.size();

        if (opt.canonical_witness) {
            // Walk vertices in increasing order and keep v whenever an
            // optimal set still exists that contains v.
            const std::size_t target = best.size();
            std::vector<std::size_t> chosen;
            std::vector<std::size_t> pool = comp;
            bool ok = true;
            while (chosen.size() < target && ok) {
                const std::size_t need = target - chosen.size();
                const std::size_t v = pool.front();
                std::vector<std::size_t> rest;
                for (std::size_t k = 1; k < pool.size(); ++k)
                    if (!g.adjacent(v, pool[k]))
                        rest.push_back(pool[k]);
                bool take = need == 1;
                if (!take && rest.size() + 1 >= need) {
                    detail::CliqueSearch sub(g, rest);
                    const bool finished = sub.run(need - 2, need - 1, budget);
                    res.nodes += sub.nodes();
                    if (!finished)
                        ok = false;
                    take = sub.best_size() >= need - 1;
                }
                if (!ok)
                    break;
                if (take) {
                    chosen.push_back(v);
                    pool = std::move(rest);
                } else {
                    pool.erase(pool.begin());
                }
            }
            if (ok && chosen.size() == target)
                best = chosen;
        }
        res.witness.insert(res.witness.end(), best.begin(), best.end());
    }
    std::sort(res.witness.begin(), res.witness.end());
    res.optimum = res.witness.size();
    if (res.exact)
        res.upper_bound = res.optimum;
    return res;
}

} // namespace trifree

#endif
