#ifndef TRIFREE_REDUCTIONS_HPP
#define TRIFREE_REDUCTIONS_HPP

#include <trifree/constructions.hpp>
#include <trifree/extremal.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

namespace trifree {

// ---------------------------------------------------------------------------
// Mariposa stripping

/// Orients every unordered vertex pair at random from `seed` and keeps the
/// triangles whose three edges all run clockwise (a -> b -> c -> a for
/// a < b < c). Two kept triangles cannot share an edge from opposite
/// sides, so the result has no mariposa pair.
inline std::vector<Triangle> mariposa_strip(const ConvexArena &arena, const std::vector<Triangle> &family,
                                            std::uint64_t seed)
{
    const int m = arena.size();
    std::mt19937_64 rng(seed);
    // forward[u*m+w] for u < w: true when the pair is directed u -> w.
    std::vector<char> forward(static_cast<std::size_t>(m) * m, 0);
    for (int u = 0; u < m; ++u)
        for (int w = u + 1; w < m; ++w)
            forward[static_cast<std::size_t>(u) * m + w] = static_cast<char>(rng() & 1u);
    auto dir = [&](int u, int w) { return forward[static_cast<std::size_t>(u) * m + w] != 0; };
    std::vector<Triangle> out;
    for (const auto &t : family) {
        require_fits(arena, t);
        if (dir(t[0], t[1]) && dir(t[1], t[2]) && !dir(t[0], t[2]))
            out.push_back(t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Top/bottom recurrence

struct RecurrenceBound {
    double c = 1;
    double per_level = 1; // f(n) = per_level * n^c + f(ceil(n/2)) + f(floor(n/2))
    double base = 0;      // f(n) for n <= 2
    std::vector<double> values;  // index n, 0..n_max
    std::vector<double> ratios;  // f(n) / g(n), g = n^c or n log2 n; 0 for n < 2
    double limit = 0;            // proved ceiling for the ratios
    double sup_ratio = 0;
    bool bounded = false;
    std::string shape;
};

/// Evaluates the recurrence bottom-up and checks that f(n)/g(n) stays under
/// the closed-form ceiling: K/(1 - 2^(1-c)) + base for c > 1, and
/// 2K + base for c = 1 with g(n) = n log2 n.
inline RecurrenceBound top_bottom_solve(double c, double base, int n_max = 1 << 16, double per_level = 1)
{
    if (!(c >= 1))
        throw invalid_input("exponent c must be at least 1");
    if (n_max < 4)
        throw invalid_input("n_max must be at least 4");
    RecurrenceBound r{c, per_level, base, {}, {}, 0, 0, false, c > 1 ? "n^c" : "n log n"};
    r.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    r.ratios.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        if (n <= 2) {
            r.values[static_cast<std::size_t>(n)] = base;
            continue;
        }
        r.values[static_cast<std::size_t>(n)] = per_level * std::pow(n, c) +
                                                r.values[static_cast<std::size_t>((n + 1) / 2)] +
                                                r.values[static_cast<std::size_t>(n / 2)];
    }
    r.limit = c > 1 ? per_level / (1 - std::pow(2.0, 1 - c)) + base : 2 * per_level + base;
    for (int n = 2; n <= n_max; ++n) {
        const double g = c > 1 ? std::pow(n, c) : n * std::log2(static_cast<double>(n));
        const double q = r.values[static_cast<std::size_t>(n)] / g;
        r.ratios[static_cast<std::size_t>(n)] = q;
        r.sup_ratio = std::max(r.sup_ratio, q);
    }
    // Ceiling splits overshoot the power-of-two limit by O(1/n).
    r.bounded = r.sup_ratio <= r.limit * 1.001 + 1e-9;
    return r;
}

// ---------------------------------------------------------------------------
// Upper-bound claims checked against exact values

struct UpperClaim {
    std::string name;
    ForbiddenSet x;
    bool top_bottom; // true: bound on ex'(n), in terms of t = ceil(n/2) tops
    std::string formula;
    std::function<double(int)> bound; // argument: n for ex, t for ex'
};

inline const std::vector<UpperClaim> &upper_claims()
{
    using K = ConfigKind;
    static const std::vector<UpperClaim> claims{
        {"no crossings at all", {K::Taco, K::Nested, K::Crossing, K::Swords, K::David}, false, "n-2",
         [](int n) { return n - 2.0; }},
        {"one point per row", {K::Taco, K::Nested, K::Crossing}, true, "t", [](int t) { return 1.0 * t; }},
        {"two extra per round", {K::Nested, K::Crossing, K::Ears}, true, "3t", [](int t) { return 3.0 * t; }},
        {"gamma-free rows", {K::Taco, K::Nested, K::David}, true, "2t", [](int t) { return 2.0 * t; }},
        {"crossing and swords", {K::Crossing, K::Swords}, true, "3t", [](int t) { return 3.0 * t; }},
        {"split by leftmost point", {K::Nested, K::Ears, K::David}, true, "6t", [](int t) { return 6.0 * t; }},
        {"lazy-L-free", {K::Taco, K::Swords}, true, "3t", [](int t) { return 3.0 * t; }},
        {"four-colourable rows", {K::Nested, K::Swords}, true, "6t", [](int t) { return 6.0 * t; }},
        {"non-decreasing rounds", {K::Nested}, true, "2t^2-3t",
         [](int t) { return std::max(0.0, 2.0 * t * t - 3.0 * t); }},
        {"non-decreasing union", {K::Ears, K::Swords, K::Bat, K::Nested}, true, "3t-4",
         [](int t) { return 3.0 * t - 4; }},
    };
    return claims;
}

// ---------------------------------------------------------------------------
// Table 2 layout and advisory classes

/// Row labels: subsets of {taco, bat, nested, crossing} in the table's order.
inline const std::vector<ForbiddenSet> &table_rows()
{
    using K = ConfigKind;
    static const std::vector<ForbiddenSet> rows{
        {K::Taco, K::Bat, K::Nested, K::Crossing},
        {K::Taco, K::Nested, K::Crossing},
        {K::Taco, K::Bat, K::Nested},
        {K::Taco, K::Nested},
        {K::Bat, K::Nested, K::Crossing},
        {K::Nested, K::Crossing},
        {K::Bat, K::Nested},
        {K::Nested},
        {K::Taco, K::Bat, K::Crossing},
        {K::Taco, K::Crossing},
        {K::Taco, K::Bat},
        {K::Taco},
        {K::Bat, K::Crossing},
        {K::Crossing},
        {K::Bat},
        {},
    };
    return rows;
}

/// Column labels: subsets of {swords, david, ears}.
inline const std::vector<ForbiddenSet> &table_columns()
{
    using K = ConfigKind;
    static const std::vector<ForbiddenSet> cols{
        {K::Swords, K::David, K::Ears}, {K::Swords, K::Ears}, {K::Swords, K::David}, {K::Swords},
        {K::David, K::Ears},            {K::Ears},            {K::David},            {},
    };
    return cols;
}

/// The claimed asymptotic class of ex(n, X), mariposa ignored. "n*" means
/// between n and n log n; "tripods" means between n^1.546 and
/// n^2 / e^(Omega(log* n)).
inline std::string advisory_class(ForbiddenSet x)
{
    static const char *grid[16][8] = {
        {"1", "n", "n", "n", "n", "n", "n", "n"},
        {"n*", "n*", "n*", "n*", "n*", "n*", "n*", "n*"},
        {"n", "n", "n*", "n*", "n*", "tripods", "n*", "tripods"},
        {"n*", "n*", "n*", "n*", "n*", "tripods", "n*", "tripods"},
        {"n", "n", "n", "n", "n", "n", "n", "n"},
        {"n*", "n*", "n*", "n*", "n*", "n*", "n^2", "n^2"},
        {"n", "n", "n*", "n*", "n*", "n^2", "n^2", "n^2"},
        {"n*", "n*", "n*", "n*", "n*", "n^2", "n^2", "n^2"},
        {"n*", "n*", "n*", "n*", "n^2", "n^2", "n^2", "n^2"},
        {"n*", "n*", "n*", "n*", "n^2", "n^2", "n^2", "n^2"},
        {"n*", "n*", "n*", "n*", "n^2", "n^2", "n^2", "n^2"},
        {"n*", "n*", "n*", "n*", "n^2", "n^2", "n^2", "n^2"},
        {"n*", "n*", "n*", "n*", "n^2", "n^2", "n^2", "n^2"},
        {"n*", "n*", "n*", "n*", "n^2", "n^2", "n^2", "n^2"},
        {"n^2", "n^2", "n^2", "n^2", "n^2", "n^3", "n^2", "n^3"},
        {"n^2", "n^2", "n^2", "n^2", "n^2", "n^3", "n^2", "n^3"},
    };
    const auto y = x.without(ConfigKind::Mariposa);
    const ForbiddenSet row_part{ConfigKind::Taco, ConfigKind::Bat, ConfigKind::Nested, ConfigKind::Crossing};
    const auto &rows = table_rows();
    const auto &cols = table_columns();
    const auto r = std::find(rows.begin(), rows.end(), y & row_part) - rows.begin();
    const auto c = std::find(cols.begin(), cols.end(), y.without(ConfigKind::Taco)
                                                          .without(ConfigKind::Bat)
                                                          .without(ConfigKind::Nested)
                                                          .without(ConfigKind::Crossing)) -
                   cols.begin();
    return grid[r][c];
}

// ---------------------------------------------------------------------------
// The table

struct CellValue {
    std::size_t lower = 0;
    std::size_t upper = 0;
    bool exact() const noexcept { return lower == upper; }
    std::string to_string() const
    {
        return exact() ? std::to_string(lower) : std::to_string(lower) + ".." + std::to_string(upper);
    }
};

struct TableRow {
    ForbiddenSet x;
    std::vector<CellValue> ex;       // index n - n_min
    std::vector<CellValue> ex_prime; // index n - n_min
    std::string advisory;
    std::vector<std::string> upper_tags;
    std::string lower_construction; // largest applicable construction at the reference size
    std::size_t lower_construction_size = 0;
};

struct TableFlag {
    ForbiddenSet x;
    int n = 0;
    std::string quantity; // "ex" or "ex'"
    std::size_t value = 0;
    std::string reason;
};

struct BoundsLattice {
    int n_min = 3;
    int n_max = 0;
    int reference_n = 30;
    std::vector<TableRow> rows; // indexed by mask
    std::vector<TableFlag> flags;
    std::size_t inexact_cells = 0;
    double millis = 0;

    const TableRow &row(ForbiddenSet x) const { return rows.at(x.mask()); }
};

inline constexpr int default_table_n_max = 9;

namespace detail {

// Runs job(i) for i in [0, count) on a few threads; results are stored by
// index so the outcome does not depend on scheduling.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)> &job)
{
    const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i)
            job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto &th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

// X contains Y when every kind of Y is in X.
inline bool contains_all(ForbiddenSet x, ForbiddenSet y) noexcept
{
    return (x & y) == y;
}

// Upper bounds only shrink and lower bounds only grow along the subset order.
inline void propagate(std::vector<std::vector<CellValue>> &cells)
{
    for (std::size_t k = 0; k < cells[0].size(); ++k) {
        for (unsigned x = 0; x < 256; ++x)
            for (unsigned b = 0; b < 8; ++b)
                if (x & (1u << b)) {
                    const unsigned y = x & ~(1u << b);
                    auto &cx = cells[x][k];
                    cx.upper = std::min(cx.upper, cells[y][k].upper);
                }
        for (unsigned x = 256; x-- > 0;)
            for (unsigned b = 0; b < 8; ++b)
                if (!(x & (1u << b))) {
                    const unsigned z = x | (1u << b);
                    auto &cx = cells[x][k];
                    cx.lower = std::max(cx.lower, cells[z][k].lower);
                }
    }
}

} // namespace detail

/// Exact ex and ex' for every X and 3 <= n <= n_max, lattice-propagated and
/// checked against the upper-bound claims, the mariposa lemma and the
/// construction sizes. `budget` is the MIS node budget per cell.
inline BoundsLattice build_table(int n_max = default_table_n_max, std::uint64_t budget = 20'000'000)
{
    if (n_max < 3)
        throw invalid_input("n_max must be at least 3");
    if (n_max > 12)
        throw capacity_exceeded("table generation is limited to n_max <= 12");
    const auto start = std::chrono::steady_clock::now();
    BoundsLattice t;
    t.n_max = n_max;
    const int width = n_max - t.n_min + 1;

    std::vector<std::vector<CellValue>> ex_cells(256, std::vector<CellValue>(static_cast<std::size_t>(width)));
    auto exp_cells = ex_cells;

    for (int n = t.n_min; n <= n_max; ++n) {
        const ConvexArena arena(n);
        const PairClassMatrix all(arena, FamilyFilter::AllTriangles, default_vertex_cap);
        const PairClassMatrix tb(arena, FamilyFilter::TopBottom, default_vertex_cap);
        const auto k = static_cast<std::size_t>(n - t.n_min);
        detail::parallel_for(512, [&](std::size_t job) {
            const ForbiddenSet x(static_cast<std::uint8_t>(job & 0xFF));
            const bool top = job >= 256;
            MisOptions opt;
            opt.node_budget = budget;
            opt.canonical_witness = false;
            const auto g = build_conflict_graph(top ? tb : all, x);
            const auto r = solve_conflict_graph(g, opt);
            auto &cell = (top ? exp_cells : ex_cells)[x.mask()][k];
            cell.lower = r.optimum;
            cell.upper = r.upper_bound;
        });
    }
    detail::propagate(ex_cells);
    detail::propagate(exp_cells);

    // Largest applicable construction at the reference size.
    std::vector<std::pair<std::string, std::size_t>> built;
    for (const auto &name : construction_names()) {
        auto spec = construction_from_string(name, t.reference_n);
        if (spec.id == ConstructionId::TripodHalf)
            continue;
        built.emplace_back(name, size_formula(spec));
    }

    t.rows.resize(256);
    for (unsigned m = 0; m < 256; ++m) {
        auto &row = t.rows[m];
        row.x = ForbiddenSet(static_cast<std::uint8_t>(m));
        row.ex = ex_cells[m];
        row.ex_prime = exp_cells[m];
        row.advisory = advisory_class(row.x);
        for (const auto &c : upper_claims())
            if (detail::contains_all(row.x, c.x))
                row.upper_tags.push_back(std::string(c.top_bottom ? "ex'" : "ex") + "<=" + c.formula + " (" +
                                         c.x.to_string() + ")");
        for (std::size_t i = 0; i < built.size(); ++i) {
            const auto spec = construction_from_string(built[i].first, t.reference_n);
            if (detail::contains_all(claimed_forbidden(spec), row.x) &&
                built[i].second > row.lower_construction_size) {
                row.lower_construction = built[i].first;
                row.lower_construction_size = built[i].second;
            }
        }
        for (const auto &c : row.ex)
            t.inexact_cells += !c.exact();
        for (const auto &c : row.ex_prime)
            t.inexact_cells += !c.exact();
    }

    // Checks. Each one only reads exact cells.
    for (unsigned m = 0; m < 256; ++m) {
        const auto &row = t.rows[m];
        for (int n = t.n_min; n <= n_max; ++n) {
            const auto k = static_cast<std::size_t>(n - t.n_min);
            const auto &e = row.ex[k];
            const auto &ep = row.ex_prime[k];
            for (const auto &c : upper_claims()) {
                if (!detail::contains_all(row.x, c.x))
                    continue;
                const auto &cell = c.top_bottom ? ep : e;
                const double b = c.bound(c.top_bottom ? (n + 1) / 2 : n);
                if (cell.exact() && static_cast<double>(cell.lower) > b + 1e-9)
                    t.flags.push_back({row.x, n, c.top_bottom ? "ex'" : "ex", cell.lower,
                                       "exceeds " + c.formula + " claimed for X containing " + c.x.to_string()});
            }
            if (ep.exact() && e.exact() && ep.lower > e.lower)
                t.flags.push_back({row.x, n, "ex'", ep.lower, "ex' exceeds ex"});
            if (!row.x.contains(ConfigKind::Mariposa)) {
                const auto &with = t.rows[row.x.with(ConfigKind::Mariposa).mask()].ex[k];
                if (with.exact() && e.exact() && 8 * with.lower < e.lower)
                    t.flags.push_back({row.x, n, "ex", e.lower, "adding mariposa lost more than a factor 8"});
            }
        }
        for (const auto &name : construction_names()) {
            for (int n = t.n_min; n <= n_max; ++n) {
                auto spec = construction_from_string(name, n);
                if (spec.id == ConstructionId::TripodHalf || !detail::contains_all(claimed_forbidden(spec), row.x))
                    continue;
                std::size_t size;
                try {
                    size = size_formula(spec);
                } catch (const invalid_input &) {
                    continue;
                }
                // Families live on n vertices; a puzzle of side n is a
                // top/bottom family on 2n vertices.
                if (form_of(spec.id) == ConstructionForm::Family) {
                    const auto &e = row.ex[static_cast<std::size_t>(n - t.n_min)];
                    if (e.exact() && size > e.lower)
                        t.flags.push_back({row.x, n, "ex", e.lower, name + " is larger"});
                } else if (2 * n <= n_max) {
                    const auto &ep = row.ex_prime[static_cast<std::size_t>(2 * n - t.n_min)];
                    if (ep.exact() && size > ep.lower)
                        t.flags.push_back({row.x, 2 * n, "ex'", ep.lower, name + " is larger"});
                }
            }
        }
    }
    // Consistency of the propagated lattice.
    for (unsigned m = 0; m < 256; ++m)
        for (unsigned b = 0; b < 8; ++b)
            if (!(m & (1u << b)))
                for (std::size_t k = 0; k < static_cast<std::size_t>(width); ++k) {
                    const auto &small = t.rows[m];
                    const auto &big = t.rows[m | (1u << b)];
                    if (big.ex[k].lower > small.ex[k].upper || big.ex_prime[k].lower > small.ex_prime[k].upper)
                        t.flags.push_back({big.x, t.n_min + static_cast<int>(k), "ex", big.ex[k].lower,
                                           "larger than the value for the subset " + small.x.to_string()});
                }

    t.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return t;
}

// ---------------------------------------------------------------------------
// Reports

inline std::string table_csv(const BoundsLattice &t)
{
    std::ostringstream os;
    os << "X,advisory";
    for (int n = t.n_min; n <= t.n_max; ++n)
        os << ",ex_" << n;
    for (int n = t.n_min; n <= t.n_max; ++n)
        os << ",exprime_" << n;
    os << ",exact,lower_construction,lower_size_at_" << t.reference_n << ",upper_claims\n";
    for (const auto &row : t.rows) {
        os << '"' << row.x.to_string() << "\"," << row.advisory;
        bool exact = true;
        for (const auto &c : row.ex) {
            os << ',' << c.to_string();
            exact = exact && c.exact();
        }
        for (const auto &c : row.ex_prime) {
            os << ',' << c.to_string();
            exact = exact && c.exact();
        }
        os << ',' << (exact ? "true" : "false") << ',' << row.lower_construction << ','
           << row.lower_construction_size << ",\"";
        for (std::size_t i = 0; i < row.upper_tags.size(); ++i)
            os << (i ? "; " : "") << row.upper_tags[i];
        os << "\"\n";
    }
    return os.str();
}

inline nlohmann::json to_json(const CellValue &c)
{
    if (c.exact())
        return c.lower;
    return {{"lower", c.lower}, {"upper", c.upper}};
}

inline nlohmann::json table_json(const BoundsLattice &t)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : t.rows) {
        nlohmann::json ex = nlohmann::json::object(), exp = nlohmann::json::object();
        for (int n = t.n_min; n <= t.n_max; ++n) {
            ex[std::to_string(n)] = to_json(row.ex[static_cast<std::size_t>(n - t.n_min)]);
            exp[std::to_string(n)] = to_json(row.ex_prime[static_cast<std::size_t>(n - t.n_min)]);
        }
        rows.push_back({{"X", row.x.mnemonics()},
                        {"mask", row.x.mask()},
                        {"advisory", row.advisory},
                        {"ex", ex},
                        {"ex_prime", exp},
                        {"lower_construction", row.lower_construction},
                        {"lower_construction_size", row.lower_construction_size},
                        {"upper_claims", row.upper_tags}});
    }
    nlohmann::json flags = nlohmann::json::array();
    for (const auto &f : t.flags)
        flags.push_back({{"X", f.x.mnemonics()}, {"n", f.n}, {"quantity", f.quantity}, {"value", f.value},
                         {"reason", f.reason}});
    return {{"n_min", t.n_min},   {"n_max", t.n_max},   {"reference_n", t.reference_n},
            {"rows", rows},       {"flags", flags},     {"inexact_cells", t.inexact_cells},
            {"millis", t.millis}, {"advisory_legend", {{"n*", "n : n log n"}, {"tripods", "n^1.546 : n^2/e^(Omega(log* n))"}}}};
}

/// Rows are subsets of {taco, bat, nested, crossing}, columns subsets of
/// {swords, david, ears}. Each cell shows
/// ex(n_max) / ex'(n_max) [advisory]; mariposa is left out.
inline std::string table_markdown(const BoundsLattice &t)
{
    auto label = [](ForbiddenSet s) { return s.size() == 0 ? std::string("-") : s.to_string(); };
    std::ostringstream os;
    os << "| row \\ col |";
    for (const auto &c : table_columns())
        os << ' ' << label(c) << " |";
    os << "\n|---|";
    for (std::size_t i = 0; i < table_columns().size(); ++i)
        os << "---|";
    os << '\n';
    const auto k = static_cast<std::size_t>(t.n_max - t.n_min);
    for (const auto &r : table_rows()) {
        os << "| " << label(r) << " |";
        for (const auto &c : table_columns()) {
            const auto &row = t.row(r | c);
            os << ' ' << row.ex[k].to_string() << " / " << row.ex_prime[k].to_string() << " [" << row.advisory
               << "] |";
        }
        os << '\n';
    }
    os << "\nCells: ex(" << t.n_max << ") / ex'(" << t.n_max
       << ") [claimed class]. n* = n : n log n; tripods = n^1.546 : n^2/e^(Omega(log* n)).\n";
    return os.str();
}

} // namespace trifree

#endif
