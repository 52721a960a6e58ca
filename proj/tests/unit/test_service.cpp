#include <catch_amalgamated.hpp>

#include <trifree/service.hpp>

#include <set>
#include <thread>

using namespace trifree;
using nlohmann::json;

namespace {

std::string create_body(const std::string &kind, int n, const json &x)
{
    return json{{"grid", {{"kind", kind}, {"n", n}}}, {"X", x}}.dump();
}

std::string round_body(const json &points) { return json{{"points", points}}.dump(); }

} // namespace

TEST_CASE("create with empty X leaves the whole grid alive")
{
    PuzzleService svc;
    for (int n = 2; n <= 8; ++n)
        for (const std::string kind : {"triangular", "square"}) {
            const auto r = svc.create(create_body(kind, n, json::array()));
            REQUIRE(r.status == 201);
            const Grid g(grid_kind_from_string(kind), n);
            CHECK(r.body["survivors"] == points_to_json(g.points()));
            CHECK(r.body["killed"].empty());
            CHECK(r.body["score"] == 0);
        }
}

TEST_CASE("same-row round under taco is rejected with the pair")
{
    PuzzleService svc;
    const auto id = svc.create(create_body("triangular", 5, json{"taco"})).body["id"].get<std::string>();
    const auto r = svc.round(id, round_body({{3, 1}, {4, 1}}));
    CHECK(r.status == 400);
    CHECK(r.body["violation"]["config"] == "taco");
    CHECK(r.body["violation"]["pair"] == json{{3, 1}, {4, 1}});
    CHECK(r.body["violation"]["rounds"] == json{1, 1});
    // The session is unchanged.
    CHECK(svc.get(id).body["rounds_played"] == 0);
}

TEST_CASE("session lifecycle")
{
    PuzzleService svc;
    const auto x = json{"taco", "nested", "crossing"};
    const auto id = svc.create(create_body("triangular", 6, x)).body["id"].get<std::string>();

    const auto r1 = svc.round(id, round_body({{2, 1}}));
    REQUIRE(r1.status == 200);
    CHECK(r1.body["score"] == 1);
    PuzzleState mirror(Grid(GridKind::Triangular, 6), ForbiddenSet::parse("taco,nested,crossing"));
    mirror.play_round({{2, 1}});
    CHECK(r1.body["killed"] == points_to_json(mirror.killed()));
    CHECK(r1.body["hash"] == hash_hex(state_hash(mirror)));

    const auto k = svc.killed(id);
    REQUIRE(k.status == 200);
    CHECK(k.body["killed"].size() == mirror.killed().size());
    for (const auto &e : k.body["killed"]) {
        CHECK(e["cause"] == json{2, 1});
        CHECK(e["cause_round"] == 1);
        const auto kind = config_kind_from_mnemonic(e["config"].get<std::string>());
        REQUIRE(kind);
        CHECK(mirror.forbidden().contains(*kind));
    }

    // Replaying a killed point reports the pair and the earlier round.
    const auto dead = mirror.killed().front();
    const auto bad = svc.round(id, round_body({{dead.x, dead.y}}));
    CHECK(bad.status == 400);
    CHECK(bad.body["violation"]["rounds"] == json{1, 2});

    CHECK(svc.undo(id).status == 200);
    CHECK(svc.get(id).body["rounds_played"] == 0);
    CHECK(svc.undo(id).status == 400);

    CHECK(svc.get("ffff").status == 404);
    CHECK(svc.round("ffff", round_body(json::array())).status == 404);
    CHECK(svc.undo("ffff").status == 404);
    CHECK(svc.killed("ffff").status == 404);
}

TEST_CASE("malformed requests are 400")
{
    PuzzleService svc;
    CHECK(svc.create("{").status == 400);
    CHECK(svc.create(R"({"grid":{"kind":"hex","n":3},"X":[]})").status == 400);
    CHECK(svc.create(R"({"grid":{"kind":"square","n":3},"X":["spiral"]})").status == 400);
    CHECK(svc.create(R"({"X":[]})").status == 400);
    const auto id = svc.create(create_body("square", 3, json::array())).body["id"].get<std::string>();
    CHECK(svc.round(id, "[]").status == 400);
    CHECK(svc.round(id, round_body({{9, 9}})).status == 400);
    CHECK(svc.round(id, round_body({{1, 1}, {1, 1}})).status == 400);
    CHECK(svc.construction("spiral", "5").status == 404);
    CHECK(svc.construction("fan", "x").status == 400);
    CHECK(svc.construction("fan", "").status == 400);
    CHECK(svc.construction("diag-lines", "7").status == 400);
}

TEST_CASE("sessions are independent and evicted least recently used first")
{
    PuzzleService svc(4);
    std::vector<std::string> ids;
    for (int i = 0; i < 4; ++i)
        ids.push_back(svc.create(create_body("triangular", 4, json{"taco"})).body["id"].get<std::string>());
    CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == 4);
    CHECK(svc.round(ids[0], round_body({{2, 1}})).status == 200);
    CHECK(svc.get(ids[1]).body["rounds_played"] == 0);
    svc.get(ids[1]);
    svc.create(create_body("triangular", 4, json{"taco"}));
    CHECK(svc.store().size() == 4);
    CHECK(svc.get(ids[2]).status == 404);
    CHECK(svc.get(ids[0]).status == 200);
    CHECK(svc.get(ids[1]).status == 200);
    CHECK(svc.get(ids[3]).status == 200);
    CHECK(SessionStore().cap() == 128);
}

TEST_CASE("HTTP replay of a quadrant construction")
{
    PuzzleService svc;
    httplib::Server server;
    install_routes(server, svc);
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    for (int n : {4, 7, 10}) {
        auto file = client.Get("/constructions/quadrant?n=" + std::to_string(n));
        REQUIRE(file);
        REQUIRE(file->status == 200);
        const auto sol = json::parse(file->body);

        const auto made = client.Post("/session", json{{"grid", sol["grid"]}, {"X", sol["X"]}}.dump(),
                                      "application/json");
        REQUIRE(made);
        REQUIRE(made->status == 201);
        const auto id = json::parse(made->body)["id"].get<std::string>();
        for (const auto &r : sol["rounds"]) {
            const auto step = client.Post("/session/" + id + "/round", round_body(r), "application/json");
            REQUIRE(step);
            CHECK(step->status == 200);
        }
        const auto fin = client.Get("/session/" + id);
        REQUIRE(fin);
        const auto state = json::parse(fin->body);

        std::size_t expect = 0;
        const Grid grid(GridKind::Triangular, n);
        for (const auto &p : grid.points())
            expect += 2 * p.x > n && 2 * p.y < n;
        CHECK(state["score"] == expect);
        CHECK(state["hash"] == hash_hex(state_hash(solution_from_json(sol))));

        const auto killed = client.Get("/session/" + id + "/killed");
        REQUIRE(killed);
        CHECK(killed->status == 200);
        CHECK(json::parse(killed->body)["killed"].size() == state["killed"].size());
    }

    const auto bad = client.Post("/session", create_body("triangular", 5, json{"taco"}), "application/json");
    const auto id = json::parse(bad->body)["id"].get<std::string>();
    const auto rej = client.Post("/session/" + id + "/round", round_body({{3, 1}, {4, 1}}), "application/json");
    REQUIRE(rej);
    CHECK(rej->status == 400);
    CHECK(json::parse(rej->body)["violation"]["config"] == "taco");

    const auto missing = client.Get("/session/abc123");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    CHECK(json::parse(missing->body).contains("error"));
    const auto lin = client.Get("/constructions/linear:ears?n=9");
    REQUIRE(lin);
    CHECK(lin->status == 200);
    CHECK(json::parse(lin->body)["size"] == 3);

    server.stop();
    worker.join();
}
