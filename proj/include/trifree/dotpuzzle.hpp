#ifndef TRIFREE_DOTPUZZLE_HPP
#define TRIFREE_DOTPUZZLE_HPP

#include <trifree/bitset.hpp>
#include <trifree/classify.hpp>

#include <json.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace trifree {

enum class GridKind { Triangular, Square };

inline std::string to_string(GridKind k)
{
    return k == GridKind::Triangular ? "triangular" : "square";
}

inline GridKind grid_kind_from_string(const std::string &s)
{
    if (s == "triangular")
        return GridKind::Triangular;
    if (s == "square")
        return GridKind::Square;
    throw invalid_input("unknown grid kind '" + s + "' (expected triangular or square)");
}

struct GridPoint {
    int x = 0; // column
    int y = 0; // row
    auto operator<=>(const GridPoint &) const noexcept = default;
    std::string to_string() const { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }
};

inline constexpr std::size_t max_grid_points = 2000;

/// The board of the dot puzzle.
///
/// Triangular: Q = {(x,y) : 1 <= y <= n-1, y < x <= n}, modelling the
/// top/bottom view of a 2n-gon. Tops T_1..T_n are arena vertices 0..n-1,
/// bottoms B_1..B_n (right to left) are n..2n-1, and (x,y) in round i is the
/// triangle {T_y, T_x, B_i}.
///
/// Square: {1..n}^2 on a 3n-gon. Row y uses top vertex y-1, column x uses
/// top vertex n+x-1 and round i uses bottom 2n+i-1. It is the lower-right
/// quadrant of a triangular board of side 2n.
class Grid {
public:
    Grid(GridKind kind, int n) : kind_(kind), n_(n)
    {
        if (kind == GridKind::Triangular && n < 2)
            throw invalid_input("triangular grid needs n >= 2");
        if (kind == GridKind::Square && n < 1)
            throw invalid_input("square grid needs n >= 1");
        const std::size_t count = kind == GridKind::Triangular ? static_cast<std::size_t>(n) * (n - 1) / 2
                                                               : static_cast<std::size_t>(n) * n;
        if (count > max_grid_points)
            throw capacity_exceeded("grid with " + std::to_string(count) + " points exceeds the cap of " +
                                    std::to_string(max_grid_points));
        for (int x = 1; x <= n; ++x)
            for (int y = 1; y <= n; ++y)
                if (contains({x, y}))
                    points_.push_back({x, y});
    }

    GridKind kind() const noexcept { return kind_; }
    int n() const noexcept { return n_; }
    int rounds() const noexcept { return n_; }
    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<GridPoint> &points() const noexcept { return points_; }
    const GridPoint &point(std::size_t i) const { return points_.at(i); }

    bool contains(GridPoint p) const noexcept
    {
        if (kind_ == GridKind::Triangular)
            return p.y >= 1 && p.y <= n_ - 1 && p.x > p.y && p.x <= n_;
        return p.x >= 1 && p.x <= n_ && p.y >= 1 && p.y <= n_;
    }

    /// Dense index in (x, y) lexicographic order.
    std::size_t index(GridPoint p) const
    {
        require(p);
        if (kind_ == GridKind::Square)
            return static_cast<std::size_t>((p.x - 1) * n_ + (p.y - 1));
        // columns 2..x-1 hold 1..x-2 points each
        return static_cast<std::size_t>((p.x - 2) * (p.x - 1) / 2 + (p.y - 1));
    }

    void require(GridPoint p) const
    {
        if (!contains(p))
            throw invalid_input("point " + p.to_string() + " is not on the " + trifree::to_string(kind_) +
                                " grid of size " + std::to_string(n_));
    }

    int top_count() const noexcept { return kind_ == GridKind::Triangular ? n_ : 2 * n_; }
    int arena_size() const noexcept { return top_count() + n_; }

    Triangle triangle_of(int round, GridPoint p) const
    {
        require(p);
        if (round < 1 || round > n_)
            throw invalid_input("round " + std::to_string(round) + " outside 1.." + std::to_string(n_));
        return triangle_in(round, p, top_count());
    }

    bool operator==(const Grid &o) const noexcept { return kind_ == o.kind_ && n_ == o.n_; }

    /// Same mapping against an arbitrary bottom offset; used to classify
    /// pairs on a small arena with only the bottoms that matter.
    Triangle triangle_in(int round, GridPoint p, int bottom_offset) const
    {
        const int bottom = bottom_offset + round - 1;
        if (kind_ == GridKind::Triangular)
            return Triangle(p.y - 1, p.x - 1, bottom);
        return Triangle(p.y - 1, n_ + p.x - 1, bottom);
    }

private:
    GridKind kind_;
    int n_;
    std::vector<GridPoint> points_;
};

inline constexpr std::uint8_t no_kind = 0xFF;

/// Class of every ordered pair of grid points, once within a round and once
/// across rounds (first point earlier). Only the relative order of bottom
/// vertices matters, so two bottoms suffice.
class PairTable {
public:
    explicit PairTable(const Grid &grid) : grid_(grid), n_(grid.size())
    {
        same_.assign(n_ * n_, no_kind);
        cross_.assign(n_ * n_, no_kind);
        const ConvexArena arena(grid.top_count() + 2);
        const int off = grid.top_count();
        std::vector<Triangle> r1, r2;
        for (const auto &p : grid.points()) {
            r1.push_back(grid.triangle_in(1, p, off));
            r2.push_back(grid.triangle_in(2, p, off));
        }
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                if (i < j) {
                    const auto k = code(classify_pair(arena, r1[i], r1[j]));
                    same_[i * n_ + j] = same_[j * n_ + i] = k;
                }
                cross_[i * n_ + j] = code(classify_pair(arena, r1[i], r2[j]));
            }
    }

    const Grid &grid() const noexcept { return grid_; }
    std::optional<ConfigKind> same(std::size_t i, std::size_t j) const noexcept
    {
        const auto k = same_[i * n_ + j];
        return k == no_kind ? std::nullopt : std::optional<ConfigKind>(static_cast<ConfigKind>(k));
    }
    ConfigKind cross(std::size_t earlier, std::size_t later) const noexcept
    {
        return static_cast<ConfigKind>(cross_[earlier * n_ + later]);
    }

    /// Points killed for later rounds by playing point i.
    Bitset kills(ForbiddenSet x, std::size_t i) const
    {
        Bitset out(n_);
        for (std::size_t j = 0; j < n_; ++j)
            if (x.contains(cross(i, j)))
                out.set(j);
        return out;
    }

private:
    Grid grid_;
    std::size_t n_;
    std::vector<std::uint8_t> same_, cross_;
};

/// Shared, lazily built pair tables keyed by grid.
inline std::shared_ptr<const PairTable> pair_table(const Grid &grid)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const PairTable>> cache;
    const auto key = std::make_pair(static_cast<int>(grid.kind()), grid.n());
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    auto table = std::make_shared<const PairTable>(grid);
    std::lock_guard lock(mu);
    return cache.emplace(key, std::move(table)).first->second;
}

inline bool same_round_conflict(const Grid &grid, ForbiddenSet x, GridPoint p, GridPoint q)
{
    if (p == q)
        throw invalid_input("same-round conflict needs two distinct points");
    const auto t = pair_table(grid);
    return x.contains(*t->same(grid.index(p), grid.index(q)));
}

inline bool cross_round_conflict(const Grid &grid, ForbiddenSet x, GridPoint earlier, GridPoint later)
{
    const auto t = pair_table(grid);
    return x.contains(t->cross(grid.index(earlier), grid.index(later)));
}

struct Violation {
    GridPoint first;
    int first_round = 0;
    GridPoint second;
    int second_round = 0;
    ConfigKind kind = ConfigKind::Taco;

    std::string message() const
    {
        return "point " + second.to_string() + " in round " + std::to_string(second_round) + " forms " +
               std::string(mnemonic(kind)) + " with " + first.to_string() + " from round " +
               std::to_string(first_round);
    }
};

class round_violation : public invalid_input {
public:
    explicit round_violation(Violation v) : invalid_input(v.message()), v_(v) {}
    const Violation &violation() const noexcept { return v_; }

private:
    Violation v_;
};

struct KillCause {
    GridPoint point;
    GridPoint cause;
    int cause_round = 0;
    ConfigKind kind = ConfigKind::Taco;
};

/// The dot puzzle after some rounds. Value type; the killed set is kept
/// incrementally with one snapshot per round so undo is O(1).
class PuzzleState {
public:
    PuzzleState(Grid grid, ForbiddenSet x) : grid_(std::move(grid)), x_(x), table_(pair_table(grid_))
    {
        killed_.emplace_back(grid_.size());
    }

    const Grid &grid() const noexcept { return grid_; }
    ForbiddenSet forbidden() const noexcept { return x_; }
    const std::vector<std::vector<GridPoint>> &rounds() const noexcept { return rounds_; }
    int rounds_played() const noexcept { return static_cast<int>(rounds_.size()); }
    bool finished() const noexcept { return rounds_played() >= grid_.rounds(); }
    std::size_t score() const noexcept { return score_; }
    const PairTable &table() const noexcept { return *table_; }

    const Bitset &killed_bits() const noexcept { return killed_.back(); }

    std::vector<GridPoint> killed() const
    {
        std::vector<GridPoint> out;
        killed_bits().for_each([&](std::size_t i) { out.push_back(grid_.point(i)); });
        return out;
    }

    std::vector<GridPoint> survivors() const
    {
        std::vector<GridPoint> out;
        for (std::size_t i = 0; i < grid_.size(); ++i)
            if (!killed_bits().test(i))
                out.push_back(grid_.point(i));
        return out;
    }

    /// Each killed point with the earliest played point that kills it.
    std::vector<KillCause> killed_with_causes() const
    {
        std::vector<std::optional<KillCause>> first(grid_.size());
        for (int r = 0; r < rounds_played(); ++r)
            for (const auto &p : rounds_[static_cast<std::size_t>(r)]) {
                const auto pi = grid_.index(p);
                for (std::size_t j = 0; j < grid_.size(); ++j) {
                    const auto k = table_->cross(pi, j);
                    if (!first[j] && x_.contains(k))
                        first[j] = KillCause{grid_.point(j), p, r + 1, k};
                }
            }
        std::vector<KillCause> out;
        for (auto &c : first)
            if (c)
                out.push_back(*c);
        return out;
    }

    /// First violation the round would cause, if any.
    std::optional<Violation> check_round(const std::vector<GridPoint> &q) const
    {
        if (finished())
            throw invalid_input("all " + std::to_string(grid_.rounds()) + " rounds have been played");
        const int round = rounds_played() + 1;
        auto pts = q;
        for (const auto &p : pts)
            grid_.require(p);
        std::sort(pts.begin(), pts.end());
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i] == pts[i - 1])
                throw invalid_input("point " + pts[i].to_string() + " listed twice in one round");

        for (const auto &p : pts) {
            const auto pi = grid_.index(p);
            if (!killed_bits().test(pi))
                continue;
            for (int r = 0; r < rounds_played(); ++r)
                for (const auto &e : rounds_[static_cast<std::size_t>(r)]) {
                    const auto k = table_->cross(grid_.index(e), pi);
                    if (x_.contains(k))
                        return Violation{e, r + 1, p, round, k};
                }
        }
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                const auto k = *table_->same(grid_.index(pts[i]), grid_.index(pts[j]));
                if (x_.contains(k))
                    return Violation{pts[i], round, pts[j], round, k};
            }
        return std::nullopt;
    }

    /// Appends a round; throws round_violation naming the offending pair.
    void play_round(const std::vector<GridPoint> &q)
    {
        if (auto v = check_round(q))
            throw round_violation(*v);
        auto pts = q;
        std::sort(pts.begin(), pts.end());
        Bitset k = killed_bits();
        for (const auto &p : pts)
            k |= table_->kills(x_, grid_.index(p));
        killed_.push_back(std::move(k));
        score_ += pts.size();
        rounds_.push_back(std::move(pts));
    }

    bool undo()
    {
        if (rounds_.empty())
            return false;
        score_ -= rounds_.back().size();
        rounds_.pop_back();
        killed_.pop_back();
        return true;
    }

private:
    Grid grid_;
    ForbiddenSet x_;
    std::shared_ptr<const PairTable> table_;
    std::vector<std::vector<GridPoint>> rounds_;
    std::vector<Bitset> killed_;
    std::size_t score_ = 0;
};

inline PuzzleState play_round(PuzzleState s, const std::vector<GridPoint> &q)
{
    s.play_round(q);
    return s;
}

/// killed(X, S) from scratch: everything any played point kills for later rounds.
inline std::vector<GridPoint> killed(const Grid &grid, ForbiddenSet x, const std::vector<GridPoint> &played)
{
    const auto t = pair_table(grid);
    Bitset k(grid.size());
    for (const auto &p : played)
        k |= t->kills(x, grid.index(p));
    std::vector<GridPoint> out;
    k.for_each([&](std::size_t i) { out.push_back(grid.point(i)); });
    return out;
}

inline std::vector<GridPoint> survivors(const Grid &grid, ForbiddenSet x, const std::vector<GridPoint> &played)
{
    const auto dead = killed(grid, x, played);
    std::vector<GridPoint> out;
    std::set_difference(grid.points().begin(), grid.points().end(), dead.begin(), dead.end(),
                        std::back_inserter(out));
    return out;
}

/// For one centre point, the class every other point would form with it in
/// the same round and in a later round.
struct RegionTable {
    Grid grid;
    GridPoint centre;
    std::vector<std::optional<ConfigKind>> same_round;
    std::vector<ConfigKind> later_round;
};

inline RegionTable region_table(const Grid &grid, GridPoint centre)
{
    const auto t = pair_table(grid);
    const auto c = grid.index(centre);
    RegionTable rt{grid, centre, {}, {}};
    for (std::size_t j = 0; j < grid.size(); ++j) {
        rt.same_round.push_back(t->same(c, j));
        rt.later_round.push_back(t->cross(c, j));
    }
    return rt;
}

inline char kind_letter(ConfigKind k)
{
    constexpr const char *letters = "TMBNCESD";
    return letters[code(k)];
}

/// Two character maps (same round, later rounds), top row first. '*' marks
/// the centre, '.' cells off the grid, otherwise the initial of the class
/// (T M B N C E S D); lowercase when the class is outside X.
inline std::string render_regions(const RegionTable &rt, ForbiddenSet x = ForbiddenSet::all())
{
    const auto &g = rt.grid;
    auto draw = [&](bool later) {
        std::string s;
        for (int y = g.n(); y >= 1; --y) {
            bool any = false;
            std::string row;
            for (int x1 = 1; x1 <= g.n(); ++x1) {
                const GridPoint p{x1, y};
                char ch = '.';
                if (g.contains(p)) {
                    any = true;
                    const auto j = g.index(p);
                    if (p == rt.centre && !later) {
                        ch = '*';
                    } else {
                        const auto k = later ? rt.later_round[j] : *rt.same_round[j];
                        ch = kind_letter(k);
                        if (!x.contains(k))
                            ch = static_cast<char>(ch - 'A' + 'a');
                        if (p == rt.centre)
                            ch = x.contains(k) ? '#' : '*';
                    }
                }
                row += ch;
                row += ' ';
            }
            if (any || g.kind() == GridKind::Square)
                s += row + "\n";
        }
        return s;
    };
    return "same round as " + rt.centre.to_string() + ":\n" + draw(false) + "later rounds:\n" + draw(true);
}

// JSON solution files: {grid:{kind,n}, X:[...], rounds:[[[x,y],...],...]}

inline nlohmann::json points_to_json(const std::vector<GridPoint> &pts)
{
    auto a = nlohmann::json::array();
    for (const auto &p : pts)
        a.push_back({p.x, p.y});
    return a;
}

inline std::vector<GridPoint> points_from_json(const nlohmann::json &j)
{
    if (!j.is_array())
        throw invalid_input("expected an array of [x,y] points");
    std::vector<GridPoint> out;
    for (const auto &p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
            throw invalid_input("point must be an array [x,y] of two integers");
        out.push_back({p[0].get<int>(), p[1].get<int>()});
    }
    return out;
}

inline nlohmann::json solution_to_json(const PuzzleState &s)
{
    auto rounds = nlohmann::json::array();
    for (const auto &r : s.rounds())
        rounds.push_back(points_to_json(r));
    return {
        {"grid", {{"kind", to_string(s.grid().kind())}, {"n", s.grid().n()}}},
        {"X", s.forbidden().mnemonics()},
        {"rounds", rounds},
    };
}

inline ForbiddenSet forbidden_from_json(const nlohmann::json &j)
{
    if (j.is_string())
        return ForbiddenSet::parse(j.get<std::string>());
    if (!j.is_array())
        throw invalid_input("X must be a list of configuration names");
    std::vector<std::string> names;
    for (const auto &e : j) {
        if (!e.is_string())
            throw invalid_input("X entries must be strings");
        names.push_back(e.get<std::string>());
    }
    return ForbiddenSet::from_mnemonics(names);
}

inline Grid grid_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("kind") || !j.contains("n") || !j["kind"].is_string() ||
        !j["n"].is_number_integer())
        throw invalid_input("grid must be an object {kind, n}");
    return Grid(grid_kind_from_string(j["kind"].get<std::string>()), j["n"].get<int>());
}

/// Replays every round of a solution file; the first violation is thrown.
inline PuzzleState solution_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("grid") || !j.contains("X"))
        throw invalid_input("solution needs 'grid' and 'X'");
    PuzzleState s(grid_from_json(j["grid"]), forbidden_from_json(j["X"]));
    if (j.contains("rounds")) {
        if (!j["rounds"].is_array())
            throw invalid_input("'rounds' must be an array");
        for (const auto &r : j["rounds"])
            s.play_round(points_from_json(r));
    }
    return s;
}

/// FNV-1a over the canonical (sorted-key, compact) solution JSON.
inline std::uint64_t state_hash(const PuzzleState &s)
{
    const std::string text = solution_to_json(s).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h)
{
    static const char *digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4)
        s[static_cast<std::size_t>(i)] = digits[h & 15];
    return s;
}

} // namespace trifree

#endif
