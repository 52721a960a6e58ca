#include <catch_amalgamated.hpp>

#include <trifree/mis.hpp>

#include <random>

using namespace trifree;

namespace {

// Exhaustive oracle: largest independent subset by mask enumeration, and
// the lexicographically smallest one of that size.
std::pair<std::size_t, std::vector<std::size_t>> brute_mis(const Graph &g)
{
    const std::size_t n = g.order();
    std::size_t best = 0;
    std::vector<std::size_t> best_set;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::size_t> vs;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1u)
                vs.push_back(i);
        if (vs.size() < best || !g.is_independent(vs))
            continue;
        if (vs.size() > best || vs < best_set) {
            best = vs.size();
            best_set = vs;
        }
    }
    return {best, best_set};
}

Graph random_graph(std::size_t n, double p, std::mt19937_64 &rng)
{
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng))
                g.add_edge(i, j);
    return g;
}

} // namespace

TEST_CASE("bitset basics")
{
    Bitset b(130);
    CHECK(b.none());
    b.set(0);
    b.set(64);
    b.set(129);
    CHECK(b.count() == 3);
    CHECK(b.next() == 0);
    CHECK(b.next(1) == 64);
    CHECK(b.next(65) == 129);
    CHECK(b.next(130) == 130);
    b.reset(64);
    CHECK_FALSE(b.test(64));
    Bitset all(130);
    all.set_all();
    CHECK(all.count() == 130);
    all.flip_all();
    CHECK(all.none());
}

TEST_CASE("graph rejects self-loops and bad endpoints")
{
    Graph g(3);
    CHECK_THROWS_AS(g.add_edge(1, 1), invalid_input);
    CHECK_THROWS_AS(g.add_edge(0, 3), invalid_input);
}

TEST_CASE("trivial graphs")
{
    Graph k4(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            k4.add_edge(i, j);
    CHECK(k4.edge_count() == 6);
    auto r = max_independent_set(k4);
    CHECK(r.optimum == 1);
    CHECK(r.witness == std::vector<std::size_t>{0});

    Graph empty(10);
    auto e = max_independent_set(empty);
    CHECK(e.optimum == 10);
    CHECK(e.exact);

    CHECK(max_independent_set(Graph(0)).optimum == 0);
}

TEST_CASE("matches exhaustive oracle on random graphs, including lex-min witness")
{
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 16;
        const double p = 0.1 + 0.8 * ((trial * 7) % 10) / 10.0;
        auto g = random_graph(n, p, rng);
        auto [opt, lex] = brute_mis(g);
        auto r = max_independent_set(g);
        REQUIRE(r.exact);
        REQUIRE(r.optimum == opt);
        REQUIRE(g.is_independent(r.witness));
        REQUIRE(r.witness == lex);

        auto plain = max_independent_set(g, {.node_budget = 100'000'000, .canonical_witness = false});
        REQUIRE(plain.optimum == opt);
        REQUIRE(g.is_independent(plain.witness));
    }
}

TEST_CASE("deterministic optimum, witness and node count")
{
    std::mt19937_64 rng(99);
    auto g = random_graph(60, 0.3, rng);
    auto a = max_independent_set(g);
    auto b = max_independent_set(g);
    CHECK(a.optimum == b.optimum);
    CHECK(a.witness == b.witness);
    CHECK(a.nodes == b.nodes);
}

TEST_CASE("exhausted budget is flagged with a valid bound")
{
    std::mt19937_64 rng(7);
    auto g = random_graph(120, 0.2, rng);
    auto full = max_independent_set(g);
    REQUIRE(full.exact);
    auto cut = max_independent_set(g, {.node_budget = 5, .canonical_witness = true});
    CHECK_FALSE(cut.exact);
    CHECK(cut.optimum <= full.optimum);
    CHECK(cut.upper_bound >= full.optimum);
    CHECK(g.is_independent(cut.witness));
}
