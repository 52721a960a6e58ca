#include <catch_amalgamated.hpp>

#include <trifree/reductions.hpp>

#include <cmath>

using namespace trifree;

TEST_CASE("mariposa_strip keeps a mariposa-free subset")
{
    const ConvexArena arena(8);
    const auto all = all_triangles(arena);
    CHECK(mariposa_strip(arena, {}, 1).empty());
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto s = mariposa_strip(arena, all, seed);
        for (const auto &t : s)
            CHECK(std::binary_search(all.begin(), all.end(), t));
        CHECK(verify_family(arena, ForbiddenSet{ConfigKind::Mariposa}, s).pass());
        CHECK(s == mariposa_strip(arena, all, seed));
    }
    // A family without mariposa pairs stays mariposa-free.
    const auto fan = std::get<std::vector<Triangle>>(generate({ConstructionId::Fan, 8}).object);
    CHECK(verify_family(arena, ForbiddenSet{ConfigKind::Mariposa}, mariposa_strip(arena, fan, 3)).pass());
}

TEST_CASE("mariposa_strip keeps each triangle with probability 1/8")
{
    const ConvexArena arena(8);
    const auto all = all_triangles(arena);
    const int seeds = 10000;
    std::vector<int> kept(all.size(), 0);
    double total = 0;
    for (int s = 0; s < seeds; ++s) {
        const auto out = mariposa_strip(arena, all, static_cast<std::uint64_t>(s));
        total += static_cast<double>(out.size());
        for (const auto &t : out)
            ++kept[static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), t) - all.begin())];
    }
    const double n = static_cast<double>(all.size());
    const double mean = total / seeds;
    const double sigma = std::sqrt(n * (1.0 / 8) * (7.0 / 8) / seeds);
    CHECK(std::abs(mean - n / 8) <= 5 * sigma);
    const double per_sigma = std::sqrt((1.0 / 8) * (7.0 / 8) / seeds);
    for (int k : kept)
        CHECK(std::abs(k / static_cast<double>(seeds) - 1.0 / 8) <= 5 * per_sigma);
}

TEST_CASE("top/bottom recurrence")
{
    const auto lin = top_bottom_solve(1, 0, 1 << 16);
    CHECK(lin.bounded);
    CHECK(lin.shape == "n log n");
    for (int k = 1; k <= 16; ++k) {
        const double n = std::pow(2.0, k);
        CHECK(lin.values[static_cast<std::size_t>(n)] / (n * k) <= 1.0 + 1e-12);
    }
    // Linear growth alone is not enough at c = 1.
    CHECK(lin.values[1 << 16] / (1 << 16) > 1.5 * lin.values[1 << 8] / (1 << 8));

    for (double c : {1.5, 2.0, 3.0}) {
        const auto r = top_bottom_solve(c, 0, 1 << 14);
        CHECK(r.bounded);
        CHECK(r.shape == "n^c");
        for (int k = 2; k <= 14; ++k)
            CHECK(r.values[std::size_t{1} << k] / std::pow(2.0, c * k) <= r.limit + 1e-9);
        CHECK(r.sup_ratio <= 1.05 * r.limit);
    }
    // Measured against n alone, the c = 1 sequence keeps growing.
    const auto wrong = top_bottom_solve(1, 0, 1 << 16);
    double lo = 0, hi = 0;
    for (int n = 4; n <= (1 << 16); ++n)
        (n <= (1 << 15) ? lo : hi) = std::max(n <= (1 << 15) ? lo : hi, wrong.values[static_cast<std::size_t>(n)] / n);
    CHECK(hi > lo * 1.05);
    CHECK(top_bottom_solve(2, 3, 1 << 12).bounded);

    const auto zero = top_bottom_solve(1, 0, 1024, 0);
    for (double v : zero.values)
        CHECK(v == 0);

    CHECK_THROWS_AS(top_bottom_solve(0.5, 0), invalid_input);
    CHECK_THROWS_AS(top_bottom_solve(1, 0, 2), invalid_input);
}

TEST_CASE("advisory classes follow the table layout")
{
    int tripods = 0, one = 0;
    for (unsigned m = 0; m < 256; ++m) {
        const ForbiddenSet x(static_cast<std::uint8_t>(m));
        const auto a = advisory_class(x);
        CHECK(a == advisory_class(x.with(ConfigKind::Mariposa)));
        tripods += a == "tripods";
        one += a == "1";
    }
    CHECK(tripods == 8);
    CHECK(one == 2);
    CHECK(advisory_class({}) == "n^3");
    CHECK(advisory_class({ConfigKind::Taco, ConfigKind::Nested}) == "tripods");
    CHECK(advisory_class({ConfigKind::Nested, ConfigKind::Crossing, ConfigKind::David}) == "n^2");
    CHECK(advisory_class({ConfigKind::Taco, ConfigKind::Nested, ConfigKind::Crossing, ConfigKind::Swords,
                          ConfigKind::David}) == "n*");
}

TEST_CASE("table at n <= 8")
{
    const auto t = build_table(8);
    CHECK(t.inexact_cells == 0);
    for (const auto &f : t.flags)
        FAIL_CHECK(f.x.to_string() << " n=" << f.n << " " << f.quantity << "=" << f.value << ": " << f.reason);
    CHECK(t.flags.empty());

    const ForbiddenSet eq1{ConfigKind::Taco, ConfigKind::Nested, ConfigKind::Crossing, ConfigKind::Swords,
                           ConfigKind::David};
    for (int n = 3; n <= 8; ++n) {
        const auto k = static_cast<std::size_t>(n - 3);
        CHECK(t.row(ForbiddenSet::all()).ex[k].lower == 1);
        CHECK(t.row(eq1).ex[k].lower == static_cast<std::size_t>(n - 2));
        CHECK(t.row({}).ex[k].lower == static_cast<std::size_t>(n * (n - 1) * (n - 2) / 6));
    }

    // Lattice order and the mariposa lemma.
    for (unsigned m = 0; m < 256; ++m)
        for (unsigned b = 0; b < 8; ++b) {
            if (m & (1u << b))
                continue;
            const auto &small = t.rows[m];
            const auto &big = t.rows[m | (1u << b)];
            for (std::size_t k = 0; k < small.ex.size(); ++k) {
                CHECK(big.ex[k].lower <= small.ex[k].lower);
                CHECK(big.ex_prime[k].lower <= small.ex_prime[k].lower);
                CHECK(small.ex_prime[k].lower <= small.ex[k].lower);
            }
            if (b == code(ConfigKind::Mariposa))
                for (std::size_t k = 0; k < small.ex.size(); ++k)
                    CHECK(8 * big.ex[k].lower >= small.ex[k].lower);
        }

    // Spot checks against direct solves.
    for (unsigned m : {0u, 7u, 37u, 100u, 200u, 255u}) {
        const ForbiddenSet x(static_cast<std::uint8_t>(m));
        CHECK(t.row(x).ex[5].lower == ex(8, x).optimum);
        CHECK(t.row(x).ex_prime[4].lower == ex_prime(7, x).optimum);
    }
}

TEST_CASE("linear upper bounds hold for ex' at n <= 8")
{
    using K = ConfigKind;
    const std::vector<std::pair<ForbiddenSet, int>> claims{
        {{K::Taco, K::Nested, K::Crossing}, 1}, {{K::Nested, K::Crossing, K::Ears}, 3},
        {{K::Taco, K::Nested, K::David}, 2},    {{K::Crossing, K::Swords}, 3},
        {{K::Nested, K::Ears, K::David}, 6},    {{K::Taco, K::Swords}, 3},
        {{K::Nested, K::Swords}, 6},
    };
    for (const auto &[x, c] : claims)
        for (int n = 3; n <= 8; ++n) {
            const int tops = (n + 1) / 2;
            INFO(x.to_string() << " n=" << n);
            CHECK(ex_prime(n, x).optimum <= static_cast<std::size_t>(c * tops));
        }
}

TEST_CASE("budget exhaustion marks cells inexact")
{
    const auto full = build_table(7);
    const auto cut = build_table(7, 1);
    CHECK(cut.inexact_cells > 0);
    for (unsigned m = 0; m < 256; ++m)
        for (std::size_t k = 0; k < full.rows[m].ex.size(); ++k) {
            CHECK(cut.rows[m].ex[k].lower <= full.rows[m].ex[k].lower);
            CHECK(cut.rows[m].ex[k].upper >= full.rows[m].ex[k].lower);
            CHECK(cut.rows[m].ex_prime[k].lower <= full.rows[m].ex_prime[k].lower);
            CHECK(cut.rows[m].ex_prime[k].upper >= full.rows[m].ex_prime[k].lower);
        }
    CHECK_THROWS_AS(build_table(2), invalid_input);
    CHECK_THROWS_AS(build_table(13), capacity_exceeded);
}

TEST_CASE("report formats")
{
    const auto t = build_table(6);
    const auto csv = table_csv(t);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 257);
    CHECK(csv.rfind("X,advisory,ex_3,ex_4,ex_5,ex_6,exprime_3", 0) == 0);

    const auto j = nlohmann::json::parse(table_json(t).dump());
    CHECK(j["rows"].size() == 256);
    CHECK(j["n_max"] == 6);
    CHECK(j["rows"][0]["ex"]["6"] == 20);
    CHECK(j["rows"][255]["ex"]["5"] == 1);

    const auto md = table_markdown(t);
    CHECK(std::count(md.begin(), md.end(), '\n') == 2 + 16 + 2);
    CHECK(md.find("| taco,bat,nested,crossing |") != std::string::npos);

    const auto &fan_row = t.row({ConfigKind::Taco, ConfigKind::Nested, ConfigKind::Crossing, ConfigKind::Swords,
                                 ConfigKind::David});
    CHECK(!fan_row.upper_tags.empty());
    CHECK(!fan_row.lower_construction.empty());
}
