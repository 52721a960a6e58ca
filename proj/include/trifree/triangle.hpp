#ifndef TRIFREE_TRIANGLE_HPP
#define TRIFREE_TRIANGLE_HPP

#include <trifree/error.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace trifree {

/// m vertices in convex position, indexed 0..m-1 in clockwise order.
/// Only the cyclic order is modelled; there are no coordinates.
class ConvexArena {
public:
    explicit ConvexArena(int m) : m_(m)
    {
        if (m < 3)
            throw invalid_input("convex arena needs at least 3 vertices, got " + std::to_string(m));
    }

    int size() const noexcept { return m_; }
    bool contains(int v) const noexcept { return v >= 0 && v < m_; }

    bool operator==(const ConvexArena &) const noexcept = default;

private:
    int m_;
};

/// Three distinct vertex indices, stored sorted.
class Triangle {
public:
    Triangle(int a, int b, int c)
    {
        std::array<int, 3> v{a, b, c};
        std::sort(v.begin(), v.end());
        if (v[0] == v[1] || v[1] == v[2])
            throw invalid_input("triangle vertices must be distinct");
        if (v[0] < 0)
            throw invalid_input("triangle vertex index must be non-negative");
        v_ = v;
    }

    int operator[](std::size_t i) const noexcept { return v_[i]; }
    const std::array<int, 3> &vertices() const noexcept { return v_; }
    bool has_vertex(int x) const noexcept { return v_[0] == x || v_[1] == x || v_[2] == x; }

    bool fits(const ConvexArena &arena) const noexcept { return v_[2] < arena.size(); }

    auto operator<=>(const Triangle &) const noexcept = default;
    bool operator==(const Triangle &) const noexcept = default;

    std::string to_string() const
    {
        return "(" + std::to_string(v_[0]) + "," + std::to_string(v_[1]) + "," + std::to_string(v_[2]) + ")";
    }

private:
    std::array<int, 3> v_{};
};

inline void require_fits(const ConvexArena &arena, const Triangle &t)
{
    if (!t.fits(arena))
        throw invalid_input("triangle " + t.to_string() + " has a vertex outside the " +
                            std::to_string(arena.size()) + "-gon");
}

/// All C(m,3) triangles in lexicographic order.
inline std::vector<Triangle> all_triangles(const ConvexArena &arena)
{
    std::vector<Triangle> out;
    const int m = arena.size();
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c)
                out.emplace_back(a, b, c);
    return out;
}

/// The polygon split into a top arc of ceil(m/2) vertices (indices
/// 0..ceil(m/2)-1) and a bottom arc holding the rest. Admissible triangles
/// have two top vertices and one bottom vertex.
class TopBottomArena {
public:
    explicit TopBottomArena(int m) : arena_(m) {}

    const ConvexArena &arena() const noexcept { return arena_; }
    int size() const noexcept { return arena_.size(); }
    int top_count() const noexcept { return (arena_.size() + 1) / 2; }
    int bottom_count() const noexcept { return arena_.size() / 2; }
    bool is_top(int v) const noexcept { return v >= 0 && v < top_count(); }
    bool is_bottom(int v) const noexcept { return v >= top_count() && v < arena_.size(); }

    bool admissible(const Triangle &t) const noexcept
    {
        return t.fits(arena_) && is_top(t[0]) && is_top(t[1]) && is_bottom(t[2]);
    }

    std::vector<Triangle> triangles() const
    {
        std::vector<Triangle> out;
        for (int a = 0; a < top_count(); ++a)
            for (int b = a + 1; b < top_count(); ++b)
                for (int c = top_count(); c < size(); ++c)
                    out.emplace_back(a, b, c);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    ConvexArena arena_;
};

} // namespace trifree

#endif
