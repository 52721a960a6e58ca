#ifndef TRIFREE_CONSTRUCTIONS_HPP
#define TRIFREE_CONSTRUCTIONS_HPP

#include <trifree/classify.hpp>
#include <trifree/extremal.hpp>
#include <trifree/tripods.hpp>

#include <cmath>
#include <variant>

namespace trifree {

enum class ConstructionId {
    Fan,
    Linear,
    PairwiseCrossing,
    DiagLines,
    Quadrant,
    RepeatedDiagonal,
    ShiftedDiagonal,
    TripodHalf,
};

/// Which construction, at which size. `kind` is only read by Linear.
struct ConstructionSpec {
    ConstructionId id = ConstructionId::Fan;
    int n = 0;
    ConfigKind kind = ConfigKind::Taco;
};

inline std::string to_string(const ConstructionSpec &s)
{
    switch (s.id) {
    case ConstructionId::Fan:
        return "fan";
    case ConstructionId::Linear:
        return "linear:" + std::string(mnemonic(s.kind));
    case ConstructionId::PairwiseCrossing:
        return "pairwise-crossing";
    case ConstructionId::DiagLines:
        return "diag-lines";
    case ConstructionId::Quadrant:
        return "quadrant";
    case ConstructionId::RepeatedDiagonal:
        return "repeated-diagonal";
    case ConstructionId::ShiftedDiagonal:
        return "shifted-diagonal";
    case ConstructionId::TripodHalf:
        return "tripod-half";
    }
    return "?";
}

/// Accepts the names printed by to_string; Linear takes "linear:<kind>".
inline ConstructionSpec construction_from_string(const std::string &name, int n)
{
    static const std::pair<const char *, ConstructionId> names[] = {
        {"fan", ConstructionId::Fan},
        {"pairwise-crossing", ConstructionId::PairwiseCrossing},
        {"diag-lines", ConstructionId::DiagLines},
        {"quadrant", ConstructionId::Quadrant},
        {"repeated-diagonal", ConstructionId::RepeatedDiagonal},
        {"shifted-diagonal", ConstructionId::ShiftedDiagonal},
        {"tripod-half", ConstructionId::TripodHalf},
    };
    for (const auto &[s, id] : names)
        if (name == s)
            return {id, n, ConfigKind::Taco};
    const std::string prefix = "linear:";
    if (name.rfind(prefix, 0) == 0) {
        const auto x = ForbiddenSet::parse(name.substr(prefix.size()));
        if (x.size() != 1)
            throw invalid_input("linear construction takes exactly one configuration");
        if (x.contains(ConfigKind::Mariposa))
            throw invalid_input("there is no linear construction for mariposa");
        return {ConstructionId::Linear, n, x.kinds().front()};
    }
    throw invalid_input("unknown construction '" + name +
                        "' (fan, linear:<kind>, pairwise-crossing, diag-lines, quadrant, repeated-diagonal, "
                        "shifted-diagonal, tripod-half)");
}

inline std::vector<std::string> construction_names()
{
    std::vector<std::string> out{"fan"};
    for (auto k : all_config_kinds)
        if (k != ConfigKind::Mariposa)
            out.push_back("linear:" + std::string(mnemonic(k)));
    for (const char *s : {"pairwise-crossing", "diag-lines", "quadrant", "repeated-diagonal", "shifted-diagonal",
                          "tripod-half"})
        out.push_back(s);
    return out;
}

enum class ConstructionForm { Family, Puzzle, Triples };

inline ConstructionForm form_of(ConstructionId id)
{
    switch (id) {
    case ConstructionId::Fan:
    case ConstructionId::Linear:
    case ConstructionId::PairwiseCrossing:
        return ConstructionForm::Family;
    case ConstructionId::TripodHalf:
        return ConstructionForm::Triples;
    default:
        return ConstructionForm::Puzzle;
    }
}

/// The forbidden set the construction avoids. For TripodHalf this is the
/// square-board puzzle set the triples encode.
inline ForbiddenSet claimed_forbidden(const ConstructionSpec &s)
{
    using K = ConfigKind;
    switch (s.id) {
    case ConstructionId::Fan:
        return {K::Taco, K::Nested, K::Crossing, K::Swords, K::David};
    case ConstructionId::Linear:
        return ForbiddenSet::all().without(s.kind);
    case ConstructionId::PairwiseCrossing:
        return {K::Ears, K::Bat, K::Mariposa};
    case ConstructionId::DiagLines:
        return {K::Taco, K::David, K::Crossing, K::Bat, K::Ears};
    case ConstructionId::Quadrant:
        return {K::Swords, K::Bat, K::Ears, K::David};
    case ConstructionId::RepeatedDiagonal:
        return {K::David, K::Nested, K::Crossing};
    case ConstructionId::ShiftedDiagonal:
        return {K::Bat, K::Nested, K::Ears};
    case ConstructionId::TripodHalf:
        return taco_nested();
    }
    throw std::logic_error("unreachable");
}

/// Smallest n for which the construction is non-empty.
inline int minimum_n(const ConstructionSpec &s)
{
    switch (s.id) {
    case ConstructionId::Fan:
    case ConstructionId::PairwiseCrossing:
    case ConstructionId::Quadrant:
        return 3;
    case ConstructionId::Linear:
        switch (s.kind) {
        case ConfigKind::Bat:
        case ConfigKind::Nested:
        case ConfigKind::Crossing:
            return 4;
        default:
            return 3;
        }
    case ConstructionId::DiagLines:
    case ConstructionId::RepeatedDiagonal:
    case ConstructionId::ShiftedDiagonal:
        return 2;
    case ConstructionId::TripodHalf:
        return 1;
    }
    return 1;
}

namespace detail {

inline void require_spec(const ConstructionSpec &s)
{
    if (s.id == ConstructionId::Linear && s.kind == ConfigKind::Mariposa)
        throw invalid_input("there is no linear construction for mariposa");
    if (s.n < minimum_n(s))
        throw invalid_input(to_string(s) + " needs n >= " + std::to_string(minimum_n(s)) + ", got " +
                            std::to_string(s.n));
    // Both use n/2 unrounded; at odd n the shifted diagonal would put a
    // point in the row that equals another point's column (a bat).
    if ((s.id == ConstructionId::DiagLines || s.id == ConstructionId::ShiftedDiagonal) && s.n % 2 != 0)
        throw invalid_input(to_string(s) + " is defined for even n only");
}

inline int isqrt(int n)
{
    int k = static_cast<int>(std::sqrt(static_cast<double>(n)));
    while (k * k > n)
        --k;
    while ((k + 1) * (k + 1) <= n)
        ++k;
    return k;
}

} // namespace detail

/// Closed-form size of the construction.
inline std::size_t size_formula(const ConstructionSpec &s)
{
    detail::require_spec(s);
    const auto n = static_cast<std::size_t>(s.n);
    const std::size_t half = n / 2, half_up = (n + 1) / 2, third = n / 3;
    switch (s.id) {
    case ConstructionId::Fan:
        return n - 2;
    case ConstructionId::Linear:
        switch (s.kind) {
        case ConfigKind::Taco:
            return n - 2;
        case ConfigKind::Bat:
        case ConfigKind::Nested:
        case ConfigKind::Crossing:
            return half - 1;
        default:
            return third;
        }
    case ConstructionId::PairwiseCrossing:
        return third * third * third;
    case ConstructionId::DiagLines:
        // Round i has i points.
        return half * (half + 1) / 2;
    case ConstructionId::Quadrant:
        return half_up * (half_up - 1);
    case ConstructionId::RepeatedDiagonal:
        return n * half;
    case ConstructionId::ShiftedDiagonal:
        return n * half_up;
    case ConstructionId::TripodHalf: {
        const auto k = static_cast<std::size_t>(detail::isqrt(s.n));
        return k * k * k;
    }
    }
    throw std::logic_error("unreachable");
}

struct Construction {
    ConstructionSpec spec;
    ForbiddenSet forbidden;
    std::variant<std::vector<Triangle>, PuzzleState, TripleSet> object;

    std::size_t size() const
    {
        return std::visit(
            [](const auto &o) -> std::size_t {
                using T = std::decay_t<decltype(o)>;
                if constexpr (std::is_same_v<T, std::vector<Triangle>>)
                    return o.size();
                else if constexpr (std::is_same_v<T, PuzzleState>)
                    return o.score();
                else
                    return o.triples.size();
            },
            object);
    }
};

namespace detail {

// Labels 1..n become arena vertices 0..n-1.
inline Triangle tri1(int a, int b, int c)
{
    return Triangle(a - 1, b - 1, c - 1);
}

inline std::vector<Triangle> linear_family(ConfigKind x, int n)
{
    std::vector<Triangle> out;
    const int h = n / 2, t = n / 3;
    switch (x) {
    case ConfigKind::Taco:
        for (int i = 3; i <= n; ++i)
            out.push_back(tri1(1, 2, i));
        break;
    case ConfigKind::Bat:
        for (int i = 1; i <= h - 1; ++i)
            out.push_back(tri1(1, 2 * i, 2 * i + 1));
        break;
    case ConfigKind::Nested:
        for (int i = 2; i <= h; ++i)
            out.push_back(tri1(1, i, n + 2 - i));
        break;
    case ConfigKind::Crossing:
        for (int i = 2; i <= h; ++i)
            out.push_back(tri1(1, i, h + i));
        break;
    case ConfigKind::Ears:
        for (int i = 1; i <= t; ++i)
            out.push_back(tri1(3 * i - 2, 3 * i - 1, 3 * i));
        break;
    case ConfigKind::Swords:
        for (int i = 1; i <= t; ++i)
            out.push_back(tri1(i, t + 2 * i - 1, t + 2 * i));
        break;
    case ConfigKind::David:
        for (int i = 1; i <= t; ++i)
            out.push_back(tri1(i, t + i, 2 * n / 3 + i));
        break;
    case ConfigKind::Mariposa:
        throw invalid_input("there is no linear construction for mariposa");
    }
    return out;
}

// Three contiguous blocks of floor(n/3) vertices, one vertex from each.
inline std::vector<Triangle> pairwise_crossing(int n)
{
    const int t = n / 3;
    std::vector<Triangle> out;
    for (int a = 0; a < t; ++a)
        for (int b = t; b < 2 * t; ++b)
            for (int c = 2 * t; c < 3 * t; ++c)
                out.emplace_back(a, b, c);
    return out;
}

inline PuzzleState play_rounds(const ConstructionSpec &s, const std::vector<std::vector<GridPoint>> &rounds)
{
    PuzzleState st(Grid(GridKind::Triangular, s.n), claimed_forbidden(s));
    for (const auto &r : rounds)
        st.play_round(r);
    return st;
}

inline std::vector<std::vector<GridPoint>> puzzle_rounds(const ConstructionSpec &s)
{
    const int n = s.n, h = n / 2;
    Grid g(GridKind::Triangular, n);
    std::vector<std::vector<GridPoint>> rounds;
    switch (s.id) {
    case ConstructionId::DiagLines:
        // Round i: the line y = 3n/2 - x - i + 1 inside the block
        // {n/2..n} x {1..n/2}. Read with rows in {n/2..n} the lines would
        // put a later point in the column equal to an earlier point's row.
        for (int i = 1; i <= h; ++i) {
            std::vector<GridPoint> r;
            for (int y = 1; y <= h; ++y) {
                const GridPoint p{3 * h - i + 1 - y, y};
                if (p.x >= h && g.contains(p))
                    r.push_back(p);
            }
            rounds.push_back(r);
        }
        break;
    case ConstructionId::Quadrant: {
        std::vector<GridPoint> r;
        for (const auto &p : g.points())
            if (2 * p.x > n && 2 * p.y < n)
                r.push_back(p);
        rounds.push_back(r);
        break;
    }
    case ConstructionId::RepeatedDiagonal:
        for (int i = 1; i <= n; ++i) {
            std::vector<GridPoint> r;
            for (int j = 1; j <= h; ++j)
                r.push_back({2 * j, 2 * j - 1});
            rounds.push_back(r);
        }
        break;
    case ConstructionId::ShiftedDiagonal:
        for (int i = 1; i <= n; ++i) {
            std::vector<GridPoint> r;
            for (int k = 1; k <= (n + 1) / 2; ++k)
                r.push_back({h + k, k});
            rounds.push_back(r);
        }
        break;
    default:
        throw std::logic_error("not a puzzle construction");
    }
    return rounds;
}

// With k = floor(sqrt(n)), the triples (k*u+v+1, k*v+w+1, k*w+u+1) for
// u, v, w in 0..k-1 are pairwise 2-comparable: if two differ, the
// coordinates that do not tie are decided by the differing digits.
inline TripleSet tripod_half(int n)
{
    const int k = isqrt(n);
    TripleSet s{n, {}};
    for (int u = 0; u < k; ++u)
        for (int v = 0; v < k; ++v)
            for (int w = 0; w < k; ++w)
                s.triples.push_back({k * u + v + 1, k * v + w + 1, k * w + u + 1});
    std::sort(s.triples.begin(), s.triples.end());
    return s;
}

} // namespace detail

inline Construction generate(const ConstructionSpec &s)
{
    detail::require_spec(s);
    Construction c{s, claimed_forbidden(s), std::vector<Triangle>{}};
    switch (form_of(s.id)) {
    case ConstructionForm::Family: {
        std::vector<Triangle> fam;
        if (s.id == ConstructionId::Fan)
            for (int i = 1; i + 1 < s.n; ++i)
                fam.emplace_back(0, i, i + 1);
        else if (s.id == ConstructionId::Linear)
            fam = detail::linear_family(s.kind, s.n);
        else
            fam = detail::pairwise_crossing(s.n);
        c.object = std::move(fam);
        break;
    }
    case ConstructionForm::Puzzle:
        c.object = detail::play_rounds(s, detail::puzzle_rounds(s));
        break;
    case ConstructionForm::Triples:
        c.object = detail::tripod_half(s.n);
        break;
    }
    return c;
}

/// Checks the output against a forbidden set: the pair verifier for
/// families, a fresh replay for puzzle solutions, 2-comparability (plus a
/// square-board replay when small enough) for triples.
inline Verdict verify_construction(const Construction &c, ForbiddenSet x)
{
    if (const auto *fam = std::get_if<std::vector<Triangle>>(&c.object)) {
        const auto v = verify_family(ConvexArena(std::max(c.spec.n, 3)), x, *fam);
        if (v.pass())
            return Verdict::pass();
        const auto &o = v.offences.front();
        return Verdict::fail(o.first.to_string() + " and " + o.second.to_string() + " form " + std::string(mnemonic(o.kind)) +
                             " (" + std::to_string(v.offences.size()) + " offending pairs)");
    }
    if (const auto *st = std::get_if<PuzzleState>(&c.object)) {
        PuzzleState replay(st->grid(), x);
        try {
            for (const auto &r : st->rounds())
                replay.play_round(r);
        } catch (const round_violation &e) {
            return Verdict::fail(e.what());
        }
        return Verdict::pass();
    }
    const auto &ts = std::get<TripleSet>(c.object);
    if (auto v = verify(ts); !v.ok)
        return v;
    if (x != taco_nested())
        return Verdict::fail("triple sets encode only X = {taco, nested}");
    return Verdict::pass();
}

inline nlohmann::json family_to_json(int n, ForbiddenSet x, const std::vector<Triangle> &fam)
{
    return {{"n", n}, {"X", x.mnemonics()}, {"triangles", triangles_to_json(fam)}};
}

inline nlohmann::json to_json(const Construction &c)
{
    nlohmann::json j;
    if (const auto *fam = std::get_if<std::vector<Triangle>>(&c.object))
        j = family_to_json(c.spec.n, c.forbidden, *fam);
    else if (const auto *st = std::get_if<PuzzleState>(&c.object))
        j = solution_to_json(*st);
    else
        j = to_json(std::get<TripleSet>(c.object));
    j["construction"] = to_string(c.spec);
    j["size"] = c.size();
    j["size_formula"] = size_formula(c.spec);
    return j;
}

} // namespace trifree

#endif
