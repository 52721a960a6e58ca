#ifndef TRIFREE_POINT_PATTERNS_HPP
#define TRIFREE_POINT_PATTERNS_HPP

#include <trifree/dotpuzzle.hpp>

#include <set>
#include <vector>

namespace trifree {

/// (x_i, y_i) SE-dominates (x_j, y_j) when x_i > x_j and y_i < y_j.
inline bool se_dominates(GridPoint p, GridPoint q) noexcept
{
    return p.x > q.x && p.y < q.y;
}

/// a = (x0,y0), b = (x0,y1), c = (x1,y1) with y0 < y1 and x0 < x1.
inline bool is_gamma(GridPoint a, GridPoint b, GridPoint c) noexcept
{
    return a.x == b.x && b.y == c.y && a.y < b.y && b.x < c.x;
}

/// Two points a (lower) and b (upper) in one column and a point c that
/// SE-dominates the lower one.
inline bool is_lazy_l(GridPoint a, GridPoint b, GridPoint c) noexcept
{
    return a.x == b.x && a.y < b.y && se_dominates(c, a);
}

namespace detail {

template <class Pred>
bool pattern_free(const std::vector<GridPoint> &s, Pred pred)
{
    std::set<GridPoint> pts(s.begin(), s.end());
    const std::vector<GridPoint> v(pts.begin(), pts.end());
    for (const auto &a : v)
        for (const auto &b : v)
            for (const auto &c : v)
                if (pred(a, b, c))
                    return false;
    return true;
}

// Whether adding p to s creates a pattern that uses p.
template <class Pred>
bool creates(const std::vector<GridPoint> &s, GridPoint p, Pred pred)
{
    for (const auto &u : s)
        for (const auto &w : s)
            if (pred(p, u, w) || pred(u, p, w) || pred(u, w, p))
                return true;
    return false;
}

} // namespace detail

inline bool gamma_free_check(const std::vector<GridPoint> &s)
{
    return detail::pattern_free(s, is_gamma);
}

inline bool lazy_l_free_check(const std::vector<GridPoint> &s)
{
    return detail::pattern_free(s, is_lazy_l);
}

struct PatternMaximum {
    std::size_t size = 0;
    std::vector<GridPoint> witness;
};

namespace detail {

template <class Pred>
PatternMaximum max_pattern_free(int n, Pred pred)
{
    if (n < 1 || n > 6)
        throw capacity_exceeded("exhaustive pattern search supports 1 <= n <= 6");
    std::vector<GridPoint> cells;
    for (int y = 1; y <= n; ++y)
        for (int x = 1; x <= n; ++x)
            cells.push_back({x, y});
    PatternMaximum best;
    std::vector<GridPoint> cur;
    auto rec = [&](auto &&self, std::size_t k) -> void {
        if (cur.size() + (cells.size() - k) <= best.size)
            return;
        if (k == cells.size()) {
            best.size = cur.size();
            best.witness = cur;
            return;
        }
        if (!creates(cur, cells[k], pred)) {
            cur.push_back(cells[k]);
            self(self, k + 1);
            cur.pop_back();
        }
        self(self, k + 1);
    };
    rec(rec, 0);
    std::sort(best.witness.begin(), best.witness.end());
    return best;
}

} // namespace detail

/// Largest Γ-free subset of {1..n}^2, by exhaustive search.
inline PatternMaximum max_gamma_free(int n)
{
    return detail::max_pattern_free(n, is_gamma);
}

/// Largest lazy-L-free subset of {1..n}^2, by exhaustive search.
inline PatternMaximum max_lazy_l_free(int n)
{
    return detail::max_pattern_free(n, is_lazy_l);
}

} // namespace trifree

#endif
