#ifndef TRIFREE_CLASSIFY_HPP
#define TRIFREE_CLASSIFY_HPP

#include <trifree/config_kind.hpp>
#include <trifree/triangle.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

namespace trifree {

namespace detail {

inline void check_pair(const ConvexArena &arena, const Triangle &t1, const Triangle &t2)
{
    require_fits(arena, t1);
    require_fits(arena, t2);
    if (t1 == t2)
        throw invalid_input("cannot classify a triangle against itself: " + t1.to_string());
}

// Position of v when the cycle is cut just after `origin`.
inline int cut_position(int v, int origin, int m) noexcept
{
    return (v - origin + m) % m;
}

} // namespace detail

/// Combinatorial classification of a pair of distinct triangles.
///
/// s = |t1 ∩ t2| decides the family:
///  - s = 2: the chord {u,v} is shared; the third vertices on the same open
///    arc give Taco, on opposite arcs Mariposa.
///  - s = 1: cutting the cycle at the shared vertex leaves four vertices in
///    a line; AABB is Bat, ABBA Nested, ABAB Crossing.
///  - s = 0: the six vertices form a circular A/B word whose block count
///    is 2 (Ears), 4 (Swords) or 6 (David).
inline ConfigKind classify_pair(const ConvexArena &arena, const Triangle &t1, const Triangle &t2)
{
    detail::check_pair(arena, t1, t2);
    const int m = arena.size();

    std::array<int, 3> shared{};
    int s = 0;
    for (int v : t1.vertices())
        if (t2.has_vertex(v))
            shared[s++] = v;

    if (s == 2) {
        const int u = shared[0], v = shared[1];
        auto third = [&](const Triangle &t) {
            for (int x : t.vertices())
                if (x != u && x != v)
                    return x;
            return -1;
        };
        const int w1 = third(t1), w2 = third(t2);
        const bool in1 = u < w1 && w1 < v;
        const bool in2 = u < w2 && w2 < v;
        return in1 == in2 ? ConfigKind::Taco : ConfigKind::Mariposa;
    }

    if (s == 1) {
        const int w = shared[0];
        // (position after the cut, owner) for the four non-shared vertices
        std::array<std::pair<int, int>, 4> seq{};
        int k = 0;
        for (int x : t1.vertices())
            if (x != w)
                seq[k++] = {detail::cut_position(x, w, m), 0};
        for (int x : t2.vertices())
            if (x != w)
                seq[k++] = {detail::cut_position(x, w, m), 1};
        std::sort(seq.begin(), seq.end());
        const int a = seq[0].second, b = seq[1].second, c = seq[2].second, d = seq[3].second;
        if (a == b)
            return ConfigKind::Bat; // AABB
        if (a == d)
            return ConfigKind::Nested; // ABBA
        (void)c;
        return ConfigKind::Crossing; // ABAB
    }

    // s == 0 (s == 3 was rejected by check_pair)
    std::array<std::pair<int, int>, 6> word{};
    int k = 0;
    for (int x : t1.vertices())
        word[k++] = {x, 0};
    for (int x : t2.vertices())
        word[k++] = {x, 1};
    std::sort(word.begin(), word.end());
    int blocks = 0;
    for (int i = 0; i < 6; ++i)
        if (word[i].second != word[(i + 1) % 6].second)
            ++blocks;
    switch (blocks) {
    case 2:
        return ConfigKind::Ears;
    case 4:
        return ConfigKind::Swords;
    case 6:
        return ConfigKind::David;
    default:
        throw std::logic_error("circular word with odd block count");
    }
}

/// Exact rational points on the unit circle, one per vertex, in clockwise
/// order. Point k is the image of t_k = round(2^12 * tan(phi_k / 2)) / 2^12
/// with phi_k = pi - 2*pi*(k + 1/2)/m under the Pythagorean parametrisation,
/// held as homogeneous integer coordinates (X, Y, W) with W > 0.
class CirclePlacement {
public:
    struct Point {
        std::int64_t x, y, w;
        bool operator==(const Point &) const noexcept = default;
    };

    static constexpr int max_vertices = 64;

    explicit CirclePlacement(const ConvexArena &arena)
    {
        const int m = arena.size();
        if (m > max_vertices)
            throw capacity_exceeded("geometric oracle supports at most 64 vertices");
        constexpr std::int64_t q = 1 << 12;
        std::int64_t prev_p = 0;
        for (int k = 0; k < m; ++k) {
            const double phi = std::numbers::pi - 2.0 * std::numbers::pi * (k + 0.5) / m;
            const auto p = static_cast<std::int64_t>(std::llround(std::tan(phi / 2.0) * q));
            if (k > 0 && p >= prev_p)
                throw std::logic_error("circle placement lost strict order");
            prev_p = p;
            pts_.push_back({q * q - p * p, 2 * p * q, q * q + p * p});
        }
    }

    const Point &operator[](int v) const { return pts_.at(static_cast<std::size_t>(v)); }

    /// Sign of the orientation of (a, b, c): +1 counter-clockwise, -1 clockwise.
    static int orient(const Point &a, const Point &b, const Point &c) noexcept
    {
        using i128 = __int128;
        const i128 det = i128(a.x) * (i128(b.y) * c.w - i128(c.y) * b.w) -
                         i128(a.y) * (i128(b.x) * c.w - i128(c.x) * b.w) +
                         i128(a.w) * (i128(b.x) * c.y - i128(c.x) * b.y);
        return (det > 0) - (det < 0);
    }

    static bool segments_cross(const Point &p1, const Point &p2, const Point &q1, const Point &q2) noexcept
    {
        return orient(p1, p2, q1) * orient(p1, p2, q2) < 0 && orient(q1, q2, p1) * orient(q1, q2, p2) < 0;
    }

    /// Whether u lies strictly inside the angle at apex spanned by rays to a and b.
    static bool in_cone(const Point &apex, const Point &a, const Point &b, const Point &u) noexcept
    {
        return orient(apex, a, u) == orient(apex, a, b) && orient(apex, b, u) == orient(apex, b, a);
    }

private:
    std::vector<Point> pts_;
};

/// Independent classification from coordinates: counts shared points,
/// proper edge crossings, and angular-cone containments at a shared vertex.
/// With one shared vertex, nested wedges give 2 crossings and interleaved
/// wedges give 3; the cone test must agree.
inline ConfigKind classify_geometric(const ConvexArena &arena, const Triangle &t1, const Triangle &t2)
{
    detail::check_pair(arena, t1, t2);
    const CirclePlacement place(arena);
    using Point = CirclePlacement::Point;

    std::array<Point, 3> a{place[t1[0]], place[t1[1]], place[t1[2]]};
    std::array<Point, 3> b{place[t2[0]], place[t2[1]], place[t2[2]]};

    int shared = 0;
    for (const auto &p : a)
        for (const auto &q : b)
            if (p == q)
                ++shared;

    int crossings = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = k + 1; l < 3; ++l) {
                    if (a[i] == b[k] || a[i] == b[l] || a[j] == b[k] || a[j] == b[l])
                        continue;
                    if (CirclePlacement::segments_cross(a[i], a[j], b[k], b[l]))
                        ++crossings;
                }

    auto fail = [&]() -> ConfigKind {
        throw std::logic_error("geometric oracle: unexpected feature vector (shared=" + std::to_string(shared) +
                               ", crossings=" + std::to_string(crossings) + ")");
    };

    if (shared == 2)
        return crossings == 1 ? ConfigKind::Taco : crossings == 0 ? ConfigKind::Mariposa : fail();

    if (shared == 1) {
        if (crossings == 0)
            return ConfigKind::Bat;
        // apex and the two other corners of each triangle
        Point apex{};
        std::vector<Point> ra, rb;
        for (const auto &p : a) {
            bool common = false;
            for (const auto &q : b)
                common = common || p == q;
            if (common)
                apex = p;
            else
                ra.push_back(p);
        }
        for (const auto &q : b)
            if (!(q == apex))
                rb.push_back(q);
        auto inside = [&](const std::vector<Point> &host, const std::vector<Point> &guest) {
            return CirclePlacement::in_cone(apex, host[0], host[1], guest[0]) &&
                   CirclePlacement::in_cone(apex, host[0], host[1], guest[1]);
        };
        const bool contained = inside(ra, rb) || inside(rb, ra);
        if (contained && crossings == 2)
            return ConfigKind::Nested;
        if (!contained && crossings == 3)
            return ConfigKind::Crossing;
        return fail();
    }

    if (shared == 0) {
        switch (crossings) {
        case 0:
            return ConfigKind::Ears;
        case 4:
            return ConfigKind::Swords;
        case 6:
            return ConfigKind::David;
        default:
            return fail();
        }
    }
    return fail();
}

struct Offence {
    Triangle first;
    Triangle second;
    ConfigKind kind;
};

struct FamilyVerdict {
    std::vector<Offence> offences;
    bool pass() const noexcept { return offences.empty(); }
};

/// Every pair of the family that forms a configuration in `forbidden`.
inline FamilyVerdict verify_family(const ConvexArena &arena, ForbiddenSet forbidden, const std::vector<Triangle> &family)
{
    std::set<Triangle> seen;
    for (const auto &t : family) {
        require_fits(arena, t);
        if (!seen.insert(t).second)
            throw invalid_input("duplicate triangle " + t.to_string() + " in family");
    }
    FamilyVerdict verdict;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            const auto kind = classify_pair(arena, family[i], family[j]);
            if (forbidden.contains(kind))
                verdict.offences.push_back({family[i], family[j], kind});
        }
    return verdict;
}

} // namespace trifree

#endif
