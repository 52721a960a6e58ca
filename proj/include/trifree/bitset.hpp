#ifndef TRIFREE_BITSET_HPP
#define TRIFREE_BITSET_HPP

#include <trifree/error.hpp>

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace trifree {

/// Fixed-size dynamic bitset with the handful of word-parallel operations
/// the solvers need.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const noexcept { return n_; }

    void set(std::size_t i) noexcept { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const noexcept { return (w_[i >> 6] >> (i & 63)) & 1u; }

    void set_all() noexcept
    {
        for (auto &w : w_)
            w = ~std::uint64_t{0};
        trim();
    }

    std::size_t count() const noexcept
    {
        std::size_t c = 0;
        for (auto w : w_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const noexcept
    {
        for (auto w : w_)
            if (w)
                return true;
        return false;
    }
    bool none() const noexcept { return !any(); }

    /// Index of the lowest set bit at or after `from`, or size() if none.
    std::size_t next(std::size_t from = 0) const noexcept
    {
        if (from >= n_)
            return n_;
        std::size_t wi = from >> 6;
        std::uint64_t w = w_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w)
                return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi >= w_.size())
                return n_;
            w = w_[wi];
        }
    }

    template <class F>
    void for_each(F &&f) const
    {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                f((wi << 6) + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    Bitset &operator&=(const Bitset &o) noexcept
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            w_[i] &= o.w_[i];
        return *this;
    }
    Bitset &operator|=(const Bitset &o) noexcept
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            w_[i] |= o.w_[i];
        return *this;
    }
    Bitset &and_not(const Bitset &o) noexcept
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            w_[i] &= ~o.w_[i];
        return *this;
    }
    friend Bitset operator&(Bitset a, const Bitset &b) noexcept { return a &= b; }

    bool intersects(const Bitset &o) const noexcept
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i])
                return true;
        return false;
    }

    void flip_all() noexcept
    {
        for (auto &w : w_)
            w = ~w;
        trim();
    }

    bool operator==(const Bitset &) const noexcept = default;

    const std::vector<std::uint64_t> &words() const noexcept { return w_; }

private:
    void trim() noexcept
    {
        if (n_ & 63)
            w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Simple undirected graph stored as one adjacency bitset per vertex.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n, Bitset(n)) {}

    std::size_t order() const noexcept { return adj_.size(); }

    void add_edge(std::size_t u, std::size_t v)
    {
        if (u >= order() || v >= order())
            throw invalid_input("edge endpoint out of range");
        if (u == v)
            throw invalid_input("self-loop at vertex " + std::to_string(u));
        adj_[u].set(v);
        adj_[v].set(u);
    }

    bool adjacent(std::size_t u, std::size_t v) const noexcept { return adj_[u].test(v); }
    const Bitset &neighbours(std::size_t v) const noexcept { return adj_[v]; }
    std::size_t degree(std::size_t v) const noexcept { return adj_[v].count(); }

    std::size_t edge_count() const noexcept
    {
        std::size_t s = 0;
        for (const auto &a : adj_)
            s += a.count();
        return s / 2;
    }

    bool is_independent(const std::vector<std::size_t> &vs) const noexcept
    {
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                if (vs[i] == vs[j] || adjacent(vs[i], vs[j]))
                    return false;
        return true;
    }

private:
    std::vector<Bitset> adj_;
};

} // namespace trifree

#endif
