#ifndef TRIFREE_TRIPODS_HPP
#define TRIFREE_TRIPODS_HPP

#include <trifree/dotpuzzle.hpp>
#include <trifree/mis.hpp>
#include <trifree/puzzle_search.hpp>

#include <json.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace trifree {

struct Triple {
    int a = 0, b = 0, c = 0;
    auto operator<=>(const Triple &) const noexcept = default;
    std::string to_string() const
    {
        return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    }
};

/// s and t are 2-comparable when s < t in at least two coordinates or
/// s > t in at least two coordinates.
inline bool two_comparable(const Triple &s, const Triple &t) noexcept
{
    const int less = (s.a < t.a) + (s.b < t.b) + (s.c < t.c);
    const int more = (s.a > t.a) + (s.b > t.b) + (s.c > t.c);
    return less >= 2 || more >= 2;
}

struct TripleSet {
    int n = 0;
    std::vector<Triple> triples;
};

/// Tops of tripods; each tripod is the union of the +x, +y and +z rays.
struct TripodSet {
    int n = 0;
    std::vector<Triple> tops;
};

/// Partial n x n matrix, rows counted bottom to top. Key (row, col).
struct MonotoneMatrix {
    int n = 0;
    std::map<std::pair<int, int>, int> entries;
};

/// Bipartite graph on A = B = {1..n} given by its matchings M_1..M_n.
struct MatchingInstance {
    int n = 0;
    std::vector<std::vector<std::pair<int, int>>> matchings;
};

struct Verdict {
    bool ok = true;
    std::string reason;
    static Verdict pass() { return {}; }
    static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

namespace detail {

inline void require_range(int v, int n, const char *what)
{
    if (v < 1 || v > n)
        throw invalid_input(std::string(what) + " " + std::to_string(v) + " outside 1.." + std::to_string(n));
}

inline void require_order(int n)
{
    if (n < 1)
        throw invalid_input("order n must be at least 1");
}

inline void require_triples(const std::vector<Triple> &ts, int n)
{
    require_order(n);
    for (const auto &t : ts) {
        require_range(t.a, n, "coordinate");
        require_range(t.b, n, "coordinate");
        require_range(t.c, n, "coordinate");
    }
}

} // namespace detail

inline Verdict verify(const TripleSet &s)
{
    detail::require_triples(s.triples, s.n);
    for (std::size_t i = 0; i < s.triples.size(); ++i)
        for (std::size_t j = i + 1; j < s.triples.size(); ++j)
            if (!two_comparable(s.triples[i], s.triples[j]))
                return Verdict::fail("triples " + s.triples[i].to_string() + " and " + s.triples[j].to_string() +
                                     " are not 2-comparable");
    return Verdict::pass();
}

/// Lattice points of a tripod inside {1..limit}^3.
inline std::vector<Triple> tripod_points(const Triple &top, int limit)
{
    std::vector<Triple> out{top};
    for (int t = top.a + 1; t <= limit; ++t)
        out.push_back({t, top.b, top.c});
    for (int t = top.b + 1; t <= limit; ++t)
        out.push_back({top.a, t, top.c});
    for (int t = top.c + 1; t <= limit; ++t)
        out.push_back({top.a, top.b, t});
    return out;
}

/// Disjointness decided on the lattice {1..n+1}^3: every intersection of
/// two tripods with integer tops is a lattice point with coordinates
/// taken from the tops, so the truncation loses nothing.
inline Verdict verify(const TripodSet &s)
{
    detail::require_triples(s.tops, s.n);
    const int lim = s.n + 1;
    std::vector<int> owner(static_cast<std::size_t>(lim + 1) * (lim + 1) * (lim + 1), -1);
    for (std::size_t i = 0; i < s.tops.size(); ++i)
        for (const auto &p : tripod_points(s.tops[i], lim)) {
            auto &o = owner[(static_cast<std::size_t>(p.a) * (lim + 1) + p.b) * (lim + 1) + p.c];
            if (o >= 0)
                return Verdict::fail("tripods at " + s.tops[static_cast<std::size_t>(o)].to_string() + " and " +
                                     s.tops[i].to_string() + " meet at " + p.to_string());
            o = static_cast<int>(i);
        }
    return Verdict::pass();
}

inline Verdict verify(const MonotoneMatrix &m)
{
    detail::require_order(m.n);
    for (const auto &[pos, v] : m.entries) {
        detail::require_range(pos.first, m.n, "row");
        detail::require_range(pos.second, m.n, "column");
        detail::require_range(v, m.n, "value");
    }
    auto cell = [](int r, int c, int v) {
        return "value " + std::to_string(v) + " at (row " + std::to_string(r) + ", col " + std::to_string(c) + ")";
    };
    for (const auto &[p, v] : m.entries)
        for (const auto &[q, w] : m.entries) {
            if (p == q)
                continue;
            const auto [r1, c1] = p;
            const auto [r2, c2] = q;
            if (r1 == r2 && c1 < c2 && v >= w)
                return Verdict::fail("row " + std::to_string(r1) + " not increasing: " + cell(r1, c1, v) + ", " +
                                     cell(r2, c2, w));
            if (c1 == c2 && r1 < r2 && v >= w)
                return Verdict::fail("column " + std::to_string(c1) + " not increasing: " + cell(r1, c1, v) +
                                     ", " + cell(r2, c2, w));
            if (v == w && c1 <= c2 && r1 >= r2)
                return Verdict::fail("positions of value " + std::to_string(v) + " not increasing: " +
                                     cell(r1, c1, v) + ", " + cell(r2, c2, w));
        }
    return Verdict::pass();
}

inline Verdict verify(const MatchingInstance &mi)
{
    detail::require_order(mi.n);
    if (mi.matchings.size() > static_cast<std::size_t>(mi.n))
        throw invalid_input("more than n matchings");
    std::set<std::pair<int, int>> edges;
    for (const auto &m : mi.matchings)
        for (const auto &e : m) {
            detail::require_range(e.first, mi.n, "vertex");
            detail::require_range(e.second, mi.n, "vertex");
            if (!edges.insert(e).second)
                return Verdict::fail("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                     ") appears twice");
        }
    for (std::size_t i = 0; i < mi.matchings.size(); ++i) {
        const auto &m = mi.matchings[i];
        for (std::size_t s = 0; s < m.size(); ++s)
            for (std::size_t t = s + 1; t < m.size(); ++t) {
                const auto [b1, c1] = m[s];
                const auto [b2, c2] = m[t];
                const std::string pair = "(" + std::to_string(b1) + "," + std::to_string(c1) + ") and (" +
                                         std::to_string(b2) + "," + std::to_string(c2) + ")";
                if (b1 == b2 || c1 == c2)
                    return Verdict::fail("M_" + std::to_string(i + 1) + " is not a matching: " + pair);
                if (edges.count({b1, c2}) || edges.count({b2, c1}))
                    return Verdict::fail("M_" + std::to_string(i + 1) + " is not induced: " + pair);
            }
    }
    return Verdict::pass();
}

namespace detail {

template <class T>
void require_valid(const T &x, const char *what)
{
    if (auto v = verify(x); !v.ok)
        throw invalid_input(std::string("source ") + what + " is invalid: " + v.reason);
}

} // namespace detail

// Conversions. Entry value v at (row r, col c) is the triple (v, r, c).

inline TripleSet matrix_to_triples(const MonotoneMatrix &m)
{
    detail::require_valid(m, "matrix");
    TripleSet s{m.n, {}};
    for (const auto &[pos, v] : m.entries)
        s.triples.push_back({v, pos.first, pos.second});
    std::sort(s.triples.begin(), s.triples.end());
    return s;
}

inline MonotoneMatrix triples_to_matrix(const TripleSet &s)
{
    detail::require_valid(s, "triple set");
    MonotoneMatrix m{s.n, {}};
    for (const auto &t : s.triples)
        m.entries[{t.b, t.c}] = t.a;
    return m;
}

inline TripodSet triples_to_tripods(const TripleSet &s)
{
    detail::require_valid(s, "triple set");
    return {s.n, s.triples};
}

inline TripleSet tripods_to_triples(const TripodSet &t)
{
    detail::require_valid(t, "tripod set");
    TripleSet s{t.n, t.tops};
    std::sort(s.triples.begin(), s.triples.end());
    return s;
}

/// M_i = {(b, c) : (i, b, c) in S}.
inline MatchingInstance triples_to_matching(const TripleSet &s)
{
    detail::require_valid(s, "triple set");
    MatchingInstance mi{s.n, std::vector<std::vector<std::pair<int, int>>>(static_cast<std::size_t>(s.n))};
    for (const auto &t : s.triples)
        mi.matchings[static_cast<std::size_t>(t.a - 1)].push_back({t.b, t.c});
    for (auto &m : mi.matchings)
        std::sort(m.begin(), m.end());
    return mi;
}

inline const ForbiddenSet &taco_nested()
{
    static const ForbiddenSet x{ConfigKind::Taco, ConfigKind::Nested};
    return x;
}

/// A square-board {taco, nested} solution as a matrix: the cell in column x,
/// row y holds the round in which (x, y) was played.
inline MonotoneMatrix puzzle_to_matrix(const PuzzleState &s)
{
    if (s.grid().kind() != GridKind::Square || s.forbidden() != taco_nested())
        throw invalid_input("matrix conversion needs a square-grid solution with X = {taco, nested}");
    MonotoneMatrix m{s.grid().n(), {}};
    for (std::size_t r = 0; r < s.rounds().size(); ++r)
        for (const auto &p : s.rounds()[r])
            m.entries[{p.y, p.x}] = static_cast<int>(r + 1);
    return m;
}

inline PuzzleState matrix_to_puzzle(const MonotoneMatrix &m)
{
    detail::require_valid(m, "matrix");
    PuzzleState s(Grid(GridKind::Square, m.n), taco_nested());
    std::vector<std::vector<GridPoint>> rounds(static_cast<std::size_t>(m.n));
    for (const auto &[pos, v] : m.entries)
        rounds[static_cast<std::size_t>(v - 1)].push_back({pos.second, pos.first});
    for (const auto &r : rounds)
        s.play_round(r);
    return s;
}

/// Plays a square-board {taco, nested} solution of side n in the
/// lower-right quadrant of the triangular board of side 2(n+1), forbidding
/// {taco, nested, bat, ears}. (x, y) moves to (n+1+x, y).
inline PuzzleState embed_lower_right(const PuzzleState &s)
{
    if (s.grid().kind() != GridKind::Square || s.forbidden() != taco_nested())
        throw invalid_input("embedding needs a square-grid solution with X = {taco, nested}");
    const int n = s.grid().n();
    PuzzleState out(Grid(GridKind::Triangular, 2 * (n + 1)),
                    ForbiddenSet{ConfigKind::Taco, ConfigKind::Nested, ConfigKind::Bat, ConfigKind::Ears});
    for (const auto &r : s.rounds()) {
        std::vector<GridPoint> q;
        for (const auto &p : r)
            q.push_back({n + 1 + p.x, p.y});
        out.play_round(q);
    }
    return out;
}

enum class Encoding { Matrix, Triples, Tripods, Matching, Puzzle };

inline Encoding encoding_from_string(const std::string &s)
{
    if (s == "matrix")
        return Encoding::Matrix;
    if (s == "triples")
        return Encoding::Triples;
    if (s == "tripods")
        return Encoding::Tripods;
    if (s == "matching")
        return Encoding::Matching;
    if (s == "puzzle")
        return Encoding::Puzzle;
    throw invalid_input("unknown encoding '" + s + "' (matrix, triples, tripods, matching, puzzle)");
}

inline std::string to_string(Encoding e)
{
    switch (e) {
    case Encoding::Matrix:
        return "matrix";
    case Encoding::Triples:
        return "triples";
    case Encoding::Tripods:
        return "tripods";
    case Encoding::Matching:
        return "matching";
    case Encoding::Puzzle:
        return "puzzle";
    }
    return "?";
}

inline constexpr int default_brute_force_cap = 4;

struct BruteForceResult {
    std::size_t maximum = 0;
    nlohmann::json witness;
};

nlohmann::json to_json(const TripleSet &s);
nlohmann::json to_json(const TripodSet &s);
nlohmann::json to_json(const MonotoneMatrix &m);
nlohmann::json to_json(const MatchingInstance &mi);

namespace detail {

inline std::vector<Triple> cube(int n)
{
    std::vector<Triple> out;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c)
                out.push_back({a, b, c});
    return out;
}

template <class Conflict>
std::vector<Triple> max_by_mis(int n, Conflict conflict)
{
    const auto pts = cube(n);
    Graph g(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (conflict(pts[i], pts[j]))
                g.add_edge(i, j);
    const auto r = max_independent_set(g);
    std::vector<Triple> out;
    for (auto v : r.witness)
        out.push_back(pts[v]);
    return out;
}

inline bool tripods_meet(const Triple &p, const Triple &q, int n)
{
    const auto a = tripod_points(p, n + 1);
    const auto b = tripod_points(q, n + 1);
    const std::set<Triple> sa(a.begin(), a.end());
    for (const auto &x : b)
        if (sa.count(x))
            return true;
    return false;
}

// Row-by-row search: each row is an increasing run of (column, value)
// pairs; columns and value-positions are checked against lower rows.
inline MonotoneMatrix max_matrix(int n)
{
    std::vector<std::vector<std::pair<int, int>>> rows_options;
    std::vector<std::pair<int, int>> cur;
    auto gen = [&](auto &&self, int col, int minv) -> void {
        if (col > n) {
            rows_options.push_back(cur);
            return;
        }
        self(self, col + 1, minv);
        for (int v = minv; v <= n; ++v) {
            cur.push_back({col, v});
            self(self, col + 1, v + 1);
            cur.pop_back();
        }
    };
    gen(gen, 1, 1);
    std::sort(rows_options.begin(), rows_options.end(),
              [](const auto &x, const auto &y) { return x.size() > y.size(); });

    MonotoneMatrix best{n, {}}, work{n, {}};
    std::size_t best_size = 0;
    auto fits = [&](int row, const std::vector<std::pair<int, int>> &opt) {
        for (const auto &[c, v] : opt)
            for (const auto &[pos, w] : work.entries) {
                const auto [r2, c2] = pos;
                (void)r2;
                if (c2 == c && w >= v) // column increases upward
                    return false;
                if (w == v && c2 >= c) // value positions increase up-right
                    return false;
            }
        (void)row;
        return true;
    };
    auto rec = [&](auto &&self, int row) -> void {
        if (work.entries.size() + static_cast<std::size_t>(n) * static_cast<std::size_t>(n - row + 1) <= best_size)
            return;
        if (row > n) {
            if (work.entries.size() > best_size) {
                best_size = work.entries.size();
                best = work;
            }
            return;
        }
        for (const auto &opt : rows_options) {
            if (work.entries.size() + opt.size() + static_cast<std::size_t>(n) * static_cast<std::size_t>(n - row) <=
                best_size)
                break;
            if (!fits(row, opt))
                continue;
            for (const auto &[c, v] : opt)
                work.entries[{row, c}] = v;
            self(self, row + 1);
            for (const auto &[c, v] : opt)
                work.entries.erase({row, c});
        }
    };
    rec(rec, 1);
    return best;
}

// Every assignment of the n*n possible edges to one of n matchings or to
// none; exponential, so only tiny n.
inline MatchingInstance max_matching(int n)
{
    const int e = n * n;
    std::vector<int> label(static_cast<std::size_t>(e), 0);
    MatchingInstance best{n, std::vector<std::vector<std::pair<int, int>>>(static_cast<std::size_t>(n))};
    std::size_t best_size = 0;
    std::size_t total = 1;
    for (int i = 0; i < e; ++i)
        total *= static_cast<std::size_t>(n + 1);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code, size = 0;
        MatchingInstance mi{n, std::vector<std::vector<std::pair<int, int>>>(static_cast<std::size_t>(n))};
        for (int k = 0; k < e; ++k) {
            const auto l = static_cast<int>(c % static_cast<std::size_t>(n + 1));
            c /= static_cast<std::size_t>(n + 1);
            if (l > 0) {
                mi.matchings[static_cast<std::size_t>(l - 1)].push_back({k / n + 1, k % n + 1});
                ++size;
            }
        }
        if (size > best_size && verify(mi).ok) {
            best_size = size;
            best = mi;
        }
    }
    return best;
}

} // namespace detail

/// Exact maximum size in the chosen encoding for order n. The matching
/// encoding enumerates (n+1)^(n^2) labelings and is limited to n <= 3.
inline BruteForceResult brute_force_max(Encoding enc, int n, int cap = default_brute_force_cap)
{
    detail::require_order(n);
    if (n > cap)
        throw capacity_exceeded("brute force is capped at n = " + std::to_string(cap));
    switch (enc) {
    case Encoding::Triples: {
        TripleSet s{n, detail::max_by_mis(n, [](const Triple &p, const Triple &q) { return !two_comparable(p, q); })};
        return {s.triples.size(), to_json(s)};
    }
    case Encoding::Tripods: {
        TripodSet s{n, detail::max_by_mis(n, [n](const Triple &p, const Triple &q) {
                        return detail::tripods_meet(p, q, n);
                    })};
        return {s.tops.size(), to_json(s)};
    }
    case Encoding::Matrix: {
        auto m = detail::max_matrix(n);
        return {m.entries.size(), to_json(m)};
    }
    case Encoding::Matching: {
        if (n > 3)
            throw capacity_exceeded("matching brute force is limited to n <= 3");
        auto mi = detail::max_matching(n);
        std::size_t size = 0;
        for (const auto &m : mi.matchings)
            size += m.size();
        return {size, to_json(mi)};
    }
    case Encoding::Puzzle: {
        auto r = search_best(Grid(GridKind::Square, n), taco_nested(), SearchStrategy::DfsExact, 1'000'000'000);
        if (!r.exact)
            throw capacity_exceeded("puzzle search budget exhausted");
        return {r.best.score(), solution_to_json(r.best)};
    }
    }
    throw std::logic_error("unreachable");
}

// JSON

namespace detail {

inline nlohmann::json triples_json(const std::vector<Triple> &ts)
{
    auto a = nlohmann::json::array();
    for (const auto &t : ts)
        a.push_back({t.a, t.b, t.c});
    return a;
}

inline std::vector<Triple> triples_from(const nlohmann::json &j)
{
    if (!j.is_array())
        throw invalid_input("expected an array of triples");
    std::vector<Triple> out;
    for (const auto &t : j) {
        if (!t.is_array() || t.size() != 3)
            throw invalid_input("triple must have three integer entries");
        for (const auto &v : t)
            if (!v.is_number_integer())
                throw invalid_input("triple must have three integer entries");
        out.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    }
    return out;
}

inline int order_from(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw invalid_input("missing integer field 'n'");
    return j["n"].get<int>();
}

} // namespace detail

inline nlohmann::json to_json(const TripleSet &s)
{
    return {{"encoding", "triples"}, {"n", s.n}, {"triples", detail::triples_json(s.triples)}};
}

inline nlohmann::json to_json(const TripodSet &s)
{
    return {{"encoding", "tripods"}, {"n", s.n}, {"tops", detail::triples_json(s.tops)}};
}

inline nlohmann::json to_json(const MonotoneMatrix &m)
{
    auto e = nlohmann::json::array();
    for (const auto &[pos, v] : m.entries)
        e.push_back({pos.first, pos.second, v});
    return {{"encoding", "matrix"}, {"n", m.n}, {"entries", e}};
}

inline nlohmann::json to_json(const MatchingInstance &mi)
{
    auto ms = nlohmann::json::array();
    for (const auto &m : mi.matchings) {
        auto a = nlohmann::json::array();
        for (const auto &[b, c] : m)
            a.push_back({b, c});
        ms.push_back(a);
    }
    return {{"encoding", "matching"}, {"n", mi.n}, {"matchings", ms}};
}

inline TripleSet triple_set_from_json(const nlohmann::json &j)
{
    return {detail::order_from(j), detail::triples_from(j.value("triples", nlohmann::json::array()))};
}

inline TripodSet tripod_set_from_json(const nlohmann::json &j)
{
    return {detail::order_from(j), detail::triples_from(j.value("tops", nlohmann::json::array()))};
}

inline MonotoneMatrix matrix_from_json(const nlohmann::json &j)
{
    MonotoneMatrix m{detail::order_from(j), {}};
    for (const auto &t : detail::triples_from(j.value("entries", nlohmann::json::array())))
        if (!m.entries.emplace(std::make_pair(t.a, t.b), t.c).second)
            throw invalid_input("cell (" + std::to_string(t.a) + "," + std::to_string(t.b) + ") given twice");
    return m;
}

inline MatchingInstance matching_from_json(const nlohmann::json &j)
{
    MatchingInstance mi{detail::order_from(j), {}};
    const auto ms = j.value("matchings", nlohmann::json::array());
    if (!ms.is_array())
        throw invalid_input("'matchings' must be an array");
    for (const auto &m : ms) {
        if (!m.is_array())
            throw invalid_input("each matching must be an array of [b,c] edges");
        std::vector<std::pair<int, int>> edges;
        for (const auto &e : m) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                throw invalid_input("edge must be [b,c]");
            edges.push_back({e[0].get<int>(), e[1].get<int>()});
        }
        mi.matchings.push_back(std::move(edges));
    }
    return mi;
}

/// Verifies any encoded object; the encoding is read from the "encoding"
/// field, or taken to be a puzzle solution if "grid" is present.
inline Verdict verify_encoded(const nlohmann::json &j, Encoding *seen = nullptr)
{
    Encoding e;
    if (j.is_object() && j.contains("encoding") && j["encoding"].is_string())
        e = encoding_from_string(j["encoding"].get<std::string>());
    else if (j.is_object() && j.contains("grid"))
        e = Encoding::Puzzle;
    else
        throw invalid_input("cannot tell the encoding of this object");
    if (seen)
        *seen = e;
    switch (e) {
    case Encoding::Triples:
        return verify(triple_set_from_json(j));
    case Encoding::Tripods:
        return verify(tripod_set_from_json(j));
    case Encoding::Matrix:
        return verify(matrix_from_json(j));
    case Encoding::Matching:
        return verify(matching_from_json(j));
    case Encoding::Puzzle:
        try {
            solution_from_json(j);
            return Verdict::pass();
        } catch (const round_violation &v) {
            return Verdict::fail(v.what());
        }
    }
    throw std::logic_error("unreachable");
}

/// Converts between encodings through the triple form. Matching is a
/// target only; puzzle means a square-board {taco, nested} solution.
inline nlohmann::json convert_encoded(const nlohmann::json &j, Encoding to)
{
    Encoding from;
    if (auto v = verify_encoded(j, &from); !v.ok)
        throw invalid_input("source does not verify: " + v.reason);
    TripleSet s;
    switch (from) {
    case Encoding::Triples:
        s = triple_set_from_json(j);
        break;
    case Encoding::Tripods:
        s = tripods_to_triples(tripod_set_from_json(j));
        break;
    case Encoding::Matrix:
        s = matrix_to_triples(matrix_from_json(j));
        break;
    case Encoding::Puzzle:
        s = matrix_to_triples(puzzle_to_matrix(solution_from_json(j)));
        break;
    case Encoding::Matching:
        throw invalid_input("matchings cannot be converted back to triples");
    }
    switch (to) {
    case Encoding::Triples:
        return to_json(s);
    case Encoding::Tripods:
        return to_json(triples_to_tripods(s));
    case Encoding::Matrix:
        return to_json(triples_to_matrix(s));
    case Encoding::Matching:
        return to_json(triples_to_matching(s));
    case Encoding::Puzzle:
        return solution_to_json(matrix_to_puzzle(triples_to_matrix(s)));
    }
    throw std::logic_error("unreachable");
}

} // namespace trifree

#endif
