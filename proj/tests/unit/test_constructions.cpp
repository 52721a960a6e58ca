#include <catch_amalgamated.hpp>

#include <trifree/constructions.hpp>

#include <cmath>

using namespace trifree;

namespace {

std::vector<ConstructionSpec> every_spec(int n)
{
    std::vector<ConstructionSpec> out;
    for (const auto &name : construction_names()) {
        auto s = construction_from_string(name, n);
        try {
            size_formula(s);
            out.push_back(s);
        } catch (const invalid_input &) {
        }
    }
    return out;
}

} // namespace

TEST_CASE("names round trip")
{
    for (const auto &name : construction_names())
        CHECK(to_string(construction_from_string(name, 10)) == name);
    CHECK(construction_names().size() == 14);
    CHECK_THROWS_AS(construction_from_string("linear:mariposa", 10), invalid_input);
    CHECK_THROWS_AS(construction_from_string("linear:taco,bat", 10), invalid_input);
    CHECK_THROWS_AS(construction_from_string("spiral", 10), invalid_input);
}

TEST_CASE("small examples")
{
    const auto ears = generate(construction_from_string("linear:ears", 9));
    const std::vector<Triangle> want{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
    CHECK(std::get<std::vector<Triangle>>(ears.object) == want);

    const auto pc6 = generate({ConstructionId::PairwiseCrossing, 6});
    CHECK(pc6.size() == 8);
    CHECK(verify_construction(pc6, {ConfigKind::Ears, ConfigKind::Bat, ConfigKind::Mariposa}).ok);
    CHECK(size_formula({ConstructionId::PairwiseCrossing, 9}) == 27);

    CHECK(generate({ConstructionId::Fan, 7}).size() == 5);
    CHECK(size_formula(construction_from_string("linear:nested", 10)) == 4);

    for (int n = 3; n <= 30; ++n) {
        Grid g(GridKind::Triangular, n);
        std::size_t count = 0;
        for (const auto &p : g.points())
            count += 2 * p.x > n && 2 * p.y < n;
        const auto q = generate({ConstructionId::Quadrant, n});
        CHECK(q.size() == count);
        CHECK(size_formula({ConstructionId::Quadrant, n}) == count);
    }
}

TEST_CASE("every construction validates and matches its size formula, n <= 30")
{
    std::size_t checked = 0;
    for (int n = 1; n <= 30; ++n)
        for (const auto &s : every_spec(n)) {
            INFO(to_string(s) << " n=" << n);
            const auto c = generate(s);
            CHECK(c.size() == size_formula(s));
            CHECK(c.size() > 0);
            CHECK(c.forbidden == claimed_forbidden(s));
            const auto v = verify_construction(c, c.forbidden);
            CHECK(v.ok);
            ++checked;
        }
    CHECK(checked > 300);
}

TEST_CASE("below the minimum, generate refuses")
{
    for (const auto &name : construction_names()) {
        auto s = construction_from_string(name, 0);
        s.n = minimum_n(s) - 1;
        CHECK_THROWS_AS(generate(s), invalid_input);
        CHECK_THROWS_AS(size_formula(s), invalid_input);
    }
    CHECK_THROWS_AS(generate({ConstructionId::DiagLines, 7}), invalid_input);
    CHECK_THROWS_AS(generate({ConstructionId::ShiftedDiagonal, 9}), invalid_input);
}

TEST_CASE("linear constructions are pure")
{
    for (auto x : all_config_kinds) {
        if (x == ConfigKind::Mariposa)
            continue;
        for (int n = 3; n <= 30; ++n) {
            ConstructionSpec s{ConstructionId::Linear, n, x};
            if (n < minimum_n(s))
                continue;
            const auto fam = std::get<std::vector<Triangle>>(generate(s).object);
            const ConvexArena arena(n);
            for (std::size_t i = 0; i < fam.size(); ++i)
                for (std::size_t j = i + 1; j < fam.size(); ++j) {
                    CHECK(classify_pair(arena, fam[i], fam[j]) == x);
                    CHECK(classify_geometric(arena, fam[i], fam[j]) == x);
                }
            if (n >= 9)
                CHECK(fam.size() >= 2);
        }
    }
}

TEST_CASE("pairwise crossing triangles always have crossing edges")
{
    for (int n = 3; n <= 15; ++n) {
        const auto fam = std::get<std::vector<Triangle>>(generate({ConstructionId::PairwiseCrossing, n}).object);
        const ConvexArena arena(n);
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (std::size_t j = i + 1; j < fam.size(); ++j) {
                const auto k = classify_geometric(arena, fam[i], fam[j]);
                CHECK((k == ConfigKind::Taco || k == ConfigKind::Nested || k == ConfigKind::Crossing ||
                       k == ConfigKind::Swords || k == ConfigKind::David));
            }
    }
}

TEST_CASE("fan size is optimal for small n")
{
    const ForbiddenSet x{ConfigKind::Taco, ConfigKind::Nested, ConfigKind::Crossing, ConfigKind::Swords,
                         ConfigKind::David};
    for (int n = 4; n <= 8; ++n)
        CHECK(ex(n, x).optimum == generate({ConstructionId::Fan, n}).size());
}

TEST_CASE("tripod-half")
{
    for (int k = 1; k <= 10; ++k) {
        const int n = k * k;
        const auto c = generate({ConstructionId::TripodHalf, n});
        const auto &ts = std::get<TripleSet>(c.object);
        CHECK(ts.triples.size() == static_cast<std::size_t>(k * k * k));
        CHECK(2 * ts.triples.size() >= static_cast<std::size_t>(std::floor(std::pow(n, 1.5))));
        CHECK(verify(ts).ok);
        if (k <= 5)
            CHECK(verify(triples_to_tripods(ts)).ok);
        if (n <= 16) {
            const auto p = matrix_to_puzzle(triples_to_matrix(ts));
            CHECK(p.score() == ts.triples.size());
        }
    }
    CHECK(generate({ConstructionId::TripodHalf, 10}).size() == 27);
}

TEST_CASE("puzzle constructions replay from their JSON")
{
    for (int n = 2; n <= 24; n += 2)
        for (auto id : {ConstructionId::DiagLines, ConstructionId::Quadrant, ConstructionId::RepeatedDiagonal,
                        ConstructionId::ShiftedDiagonal}) {
            ConstructionSpec s{id, n};
            if (n < minimum_n(s))
                continue;
            const auto c = generate(s);
            const auto j = to_json(c);
            CHECK(j["construction"] == to_string(s));
            CHECK(j["size"] == c.size());
            const auto replay = solution_from_json(j);
            CHECK(replay.score() == c.size());
            CHECK(state_hash(replay) == state_hash(std::get<PuzzleState>(c.object)));
        }
    const auto fam = to_json(generate({ConstructionId::Fan, 6}));
    CHECK(triangles_from_json(fam["triangles"]).size() == 4);
    CHECK(forbidden_from_json(fam["X"]) == claimed_forbidden({ConstructionId::Fan, 6}));
}

TEST_CASE("readings of the diagonal constructions that do not hold")
{
    // Lines through the block of rows n/2..n: an earlier point's row equals
    // a later point's column.
    {
        const int n = 6, h = 3;
        PuzzleState st(Grid(GridKind::Triangular, n), claimed_forbidden({ConstructionId::DiagLines, n}));
        bool rejected = false;
        try {
            for (int i = 1; i <= h; ++i) {
                std::vector<GridPoint> r;
                for (int x = h; x <= n; ++x) {
                    const GridPoint p{x, 3 * h - x - i + 1};
                    if (p.y >= h && st.grid().contains(p))
                        r.push_back(p);
                }
                st.play_round(r);
            }
        } catch (const round_violation &e) {
            rejected = true;
            CHECK(e.violation().kind == ConfigKind::Bat);
        }
        CHECK(rejected);
    }
    // The shifted diagonal at odd n.
    for (int n = 3; n <= 15; n += 2) {
        const int h = n / 2;
        std::vector<GridPoint> r;
        for (int k = 1; k <= (n + 1) / 2; ++k)
            r.push_back({h + k, k});
        PuzzleState st(Grid(GridKind::Triangular, n), claimed_forbidden({ConstructionId::ShiftedDiagonal, 4}));
        st.play_round(r);
        const auto v = st.check_round(r);
        REQUIRE(v.has_value());
        CHECK(v->kind == ConfigKind::Bat);
    }
    // Every second diagonal point in one round forms a bat, so the repeated
    // diagonal does not avoid {nested, bat, david}; one point per round does.
    {
        const ForbiddenSet x{ConfigKind::Nested, ConfigKind::Bat, ConfigKind::David};
        for (int n = 4; n <= 12; ++n) {
            const auto c = generate({ConstructionId::RepeatedDiagonal, n});
            CHECK_FALSE(verify_construction(c, x).ok);
            PuzzleState st(Grid(GridKind::Triangular, n), x);
            for (int i = 1; i <= n; ++i)
                st.play_round({{2, 1}});
            CHECK(st.score() == static_cast<std::size_t>(n));
        }
    }
}
