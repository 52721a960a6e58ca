#ifndef TRIFREE_EXTREMAL_HPP
#define TRIFREE_EXTREMAL_HPP

#include <trifree/classify.hpp>
#include <trifree/mis.hpp>

#include <json.hpp>

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

namespace trifree {

enum class FamilyFilter { AllTriangles, TopBottom };

inline constexpr std::size_t default_vertex_cap = 2000;

/// Candidate triangles of an arena together with the class of every pair,
/// so conflict graphs for many forbidden sets share one classification pass.
class PairClassMatrix {
public:
    PairClassMatrix(const ConvexArena &arena, FamilyFilter filter, std::size_t vertex_cap = default_vertex_cap)
        : arena_(arena), filter_(filter)
    {
        const std::size_t m = static_cast<std::size_t>(arena.size());
        const std::size_t count = filter == FamilyFilter::AllTriangles
                                      ? m * (m - 1) * (m - 2) / 6
                                      : ((m + 1) / 2) * ((m + 1) / 2 - 1) / 2 * (m / 2);
        if (count > vertex_cap)
            throw capacity_exceeded(std::to_string(count) + " candidate triangles exceed the cap of " +
                                    std::to_string(vertex_cap));
        triangles_ = filter == FamilyFilter::AllTriangles ? all_triangles(arena)
                                                          : TopBottomArena(arena.size()).triangles();
        const std::size_t n = triangles_.size();
        kinds_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto k = code(classify_pair(arena, triangles_[i], triangles_[j]));
                kinds_[i * n + j] = kinds_[j * n + i] = k;
            }
    }

    const ConvexArena &arena() const noexcept { return arena_; }
    FamilyFilter filter() const noexcept { return filter_; }
    const std::vector<Triangle> &triangles() const noexcept { return triangles_; }
    ConfigKind kind(std::size_t i, std::size_t j) const noexcept
    {
        return static_cast<ConfigKind>(kinds_[i * triangles_.size() + j]);
    }

private:
    ConvexArena arena_;
    FamilyFilter filter_;
    std::vector<Triangle> triangles_;
    std::vector<std::uint8_t> kinds_;
};

/// Triangles as vertices, an edge wherever the pair classifies into X.
struct ConflictGraph {
    int m = 0;
    ForbiddenSet forbidden;
    FamilyFilter filter = FamilyFilter::AllTriangles;
    std::vector<Triangle> vertices;
    Graph graph;
};

inline ConflictGraph build_conflict_graph(const PairClassMatrix &pcm, ForbiddenSet x)
{
    ConflictGraph cg;
    cg.m = pcm.arena().size();
    cg.forbidden = x;
    cg.filter = pcm.filter();
    cg.vertices = pcm.triangles();
    const std::size_t n = cg.vertices.size();
    cg.graph = Graph(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (x.contains(pcm.kind(i, j)))
                cg.graph.add_edge(i, j);
    return cg;
}

inline ConflictGraph build_conflict_graph(const ConvexArena &arena, ForbiddenSet x, FamilyFilter filter,
                                          std::size_t vertex_cap = default_vertex_cap)
{
    return build_conflict_graph(PairClassMatrix(arena, filter, vertex_cap), x);
}

struct SolveResult {
    int n = 0;
    ForbiddenSet forbidden;
    FamilyFilter filter = FamilyFilter::AllTriangles;
    std::size_t optimum = 0;
    std::size_t upper_bound = 0;
    bool exact = true;
    std::vector<Triangle> witness;
    std::uint64_t nodes = 0;
    double millis = 0;
};

inline SolveResult solve_conflict_graph(const ConflictGraph &cg, const MisOptions &opt = {})
{
    const auto start = std::chrono::steady_clock::now();
    const auto mis = max_independent_set(cg.graph, opt);
    SolveResult r;
    r.n = cg.m;
    r.forbidden = cg.forbidden;
    r.filter = cg.filter;
    r.optimum = mis.optimum;
    r.upper_bound = mis.upper_bound;
    r.exact = mis.exact;
    r.nodes = mis.nodes;
    for (auto v : mis.witness)
        r.witness.push_back(cg.vertices[v]);
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// Largest family of triangles on n convex points avoiding X.
inline SolveResult ex(int n, ForbiddenSet x, const MisOptions &opt = {})
{
    return solve_conflict_graph(build_conflict_graph(ConvexArena(n), x, FamilyFilter::AllTriangles), opt);
}

/// As ex, restricted to triangles with two top and one bottom vertex.
inline SolveResult ex_prime(int n, ForbiddenSet x, const MisOptions &opt = {})
{
    return solve_conflict_graph(build_conflict_graph(ConvexArena(n), x, FamilyFilter::TopBottom), opt);
}

inline nlohmann::json triangles_to_json(const std::vector<Triangle> &ts)
{
    auto out = nlohmann::json::array();
    for (const auto &t : ts)
        out.push_back({t[0], t[1], t[2]});
    return out;
}

inline std::vector<Triangle> triangles_from_json(const nlohmann::json &j)
{
    if (!j.is_array())
        throw invalid_input("expected an array of triangles");
    std::vector<Triangle> out;
    for (const auto &t : j) {
        if (!t.is_array() || t.size() != 3)
            throw invalid_input("triangle must be an array of three vertex indices");
        for (const auto &v : t)
            if (!v.is_number_integer())
                throw invalid_input("triangle vertex must be an integer");
        out.emplace_back(t[0].get<int>(), t[1].get<int>(), t[2].get<int>());
    }
    return out;
}

inline nlohmann::json to_json(const SolveResult &r)
{
    return {
        {"n", r.n},
        {"X", r.forbidden.mnemonics()},
        {"family", r.filter == FamilyFilter::AllTriangles ? "all" : "top-bottom"},
        {"optimum", r.optimum},
        {"upper_bound", r.upper_bound},
        {"exact", r.exact},
        {"witness", triangles_to_json(r.witness)},
        {"nodes", r.nodes},
        {"millis", r.millis},
    };
}

inline std::string csv_header()
{
    return "n,X,family,optimum,upper_bound,exact,nodes,millis,witness";
}

inline std::string to_csv_row(const SolveResult &r)
{
    std::ostringstream os;
    os << r.n << ",\"" << r.forbidden.to_string() << "\","
       << (r.filter == FamilyFilter::AllTriangles ? "all" : "top-bottom") << ',' << r.optimum << ','
       << r.upper_bound << ',' << (r.exact ? "true" : "false") << ',' << r.nodes << ',' << r.millis << ",\"";
    for (std::size_t i = 0; i < r.witness.size(); ++i)
        os << (i ? " " : "") << r.witness[i].to_string();
    os << '"';
    return os.str();
}

} // namespace trifree

#endif
