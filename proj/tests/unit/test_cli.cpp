#include <catch_amalgamated.hpp>

#include "trifree_cli.hpp"

#include <filesystem>

using namespace trifree;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string &name)
{
    return (std::filesystem::temp_directory_path() / ("trifree_test_" + name)).string();
}

std::vector<std::string> lines(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string l; std::getline(ss, l);)
        out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("ex prints the optimum")
{
    const auto r = invoke({"ex", "--n", "7", "--x", "taco,nested,crossing,swords,david"});
    CHECK(r.code == 0);
    CHECK(r.out == "5\n");
    CHECK(invoke({"ex", "--n", "6", "--x", "all"}).out == "1\n");
    CHECK(invoke({"ex-prime", "--n", "6", "--x", "none"}).out == "9\n");

    const auto j = json::parse(invoke({"ex", "--n", "5", "--x", "taco", "--json"}).out);
    CHECK(j["optimum"] == ex(5, ForbiddenSet{ConfigKind::Taco}).optimum);
    CHECK(j["exact"] == true);
}

TEST_CASE("ex witness verifies, and fails under a larger X")
{
    const auto path = temp_path("ex.json");
    REQUIRE(invoke({"ex", "--n", "7", "--x", "nested,crossing", "--out", path}).code == 0);
    CHECK(invoke({"verify", "--file", path}).code == 0);
    const auto bad = invoke({"verify", "--file", path, "--x", "all"});
    CHECK(bad.code == 1);
    CHECK(bad.out.rfind("fail:", 0) == 0);
    std::filesystem::remove(path);
}

TEST_CASE("constructions verify through the CLI")
{
    const auto fan = temp_path("fan6.json");
    REQUIRE(invoke({"construct", "--name", "fan", "--n", "6", "--out", fan}).code == 0);
    CHECK(invoke({"verify", "--file", fan, "--x", "taco,nested,crossing,swords,david"}).code == 0);
    CHECK(invoke({"verify", "--file", fan}).code == 0);
    std::filesystem::remove(fan);

    for (const auto &name : construction_names()) {
        const auto path = temp_path("c.json");
        REQUIRE(invoke({"construct", "--name", name, "--n", "12", "--out", path}).code == 0);
        INFO(name);
        CHECK(invoke({"verify", "--file", path}).code == 0);
        std::filesystem::remove(path);
    }
    CHECK(lines(invoke({"constructions"}).out).size() == construction_names().size());
    const auto q = json::parse(invoke({"construct", "--name", "quadrant", "--n", "8"}).out);
    CHECK(q["size"] == 12);
}

TEST_CASE("puzzle solutions replay to the same hash")
{
    const auto path = temp_path("p.json");
    const auto r = invoke({"puzzle", "--n", "6", "--x", "taco,nested,crossing", "--out", path});
    REQUIRE(r.code == 0);
    // The triangular board of side n lives on a 2n-gon.
    CHECK(r.out == std::to_string(ex_prime(12, ForbiddenSet::parse("taco,nested,crossing")).optimum) + "\n");
    const auto s = solution_from_json(cli::read_json_file(path));
    const auto v = invoke({"verify", "--file", path});
    CHECK(v.code == 0);
    CHECK(v.out.find(hash_hex(state_hash(s))) != std::string::npos);

    // Deterministic for a fixed seed.
    const auto a = invoke({"puzzle", "--n", "7", "--x", "taco", "--strategy", "randomized-restart", "--budget", "50",
                        "--seed", "9", "--out", "-"});
    const auto b = invoke({"puzzle", "--n", "7", "--x", "taco", "--strategy", "randomized-restart", "--budget", "50",
                        "--seed", "9", "--out", "-"});
    CHECK(a.out == b.out);
    std::filesystem::remove(path);
}

TEST_CASE("tripods subcommands")
{
    CHECK(invoke({"tripods", "max", "--encoding", "tripods", "--n", "3"}).out == "5\n");
    CHECK(invoke({"tripods", "max", "--encoding", "matrix", "--n", "4"}).out == "8\n");
    CHECK(invoke({"tripods", "max", "--encoding", "triples", "--n", "5"}).code == 2);

    const auto path = temp_path("t.json");
    const auto w = json::parse(invoke({"tripods", "max", "--encoding", "triples", "--n", "3", "--json"}).out);
    cli::write_text(path, w["witness"].dump());
    CHECK(invoke({"tripods", "verify", "--file", path}).code == 0);
    for (const std::string to : {"matrix", "tripods", "matching", "puzzle", "triples"}) {
        const auto c = invoke({"tripods", "convert", "--file", path, "--to", to});
        REQUIRE(c.code == 0);
        CHECK(verify_encoded(json::parse(c.out)).ok);
    }

    auto broken = w["witness"];
    broken["triples"].push_back(broken["triples"][0]);
    cli::write_text(path, broken.dump());
    CHECK(invoke({"tripods", "verify", "--file", path}).code != 0);
    std::filesystem::remove(path);
}

TEST_CASE("table output")
{
    const auto r = invoke({"table", "--n-max", "6"});
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    CHECK(rows.size() == 257);
    CHECK(rows[1].rfind("\"none\",n^3,1,4,10,20,", 0) == 0);
    const auto j = json::parse(invoke({"table", "--n-max", "5", "--format", "json"}).out);
    CHECK(j["rows"].size() == 256);
    CHECK(invoke({"table", "--n-max", "5", "--format", "markdown"}).out.find("|---|") != std::string::npos);
}

TEST_CASE("classify")
{
    CHECK(invoke({"classify", "--m", "6", "0,2,4", "1,3,5"}).out == "david\n");
    CHECK(invoke({"classify", "--m", "6", "0,1,2", "3,4,5", "--geometric"}).out == "ears\n");
    CHECK(invoke({"classify", "--m", "6", "0,1,2", "0,1,2"}).code == 2);
}

TEST_CASE("usage errors exit 2 and name the token")
{
    auto r = invoke({});
    CHECK(r.code == 2);
    r = invoke({"bogus"});
    CHECK(r.code == 2);
    CHECK(r.err.find("bogus") != std::string::npos);
    r = invoke({"ex", "--n", "7", "--x", "taco,spiral"});
    CHECK(r.code == 2);
    CHECK(r.err.find("spiral") != std::string::npos);
    r = invoke({"ex", "--n", "seven", "--x", "taco"});
    CHECK(r.code == 2);
    CHECK(r.err.find("seven") != std::string::npos);
    CHECK(invoke({"ex", "--x", "taco"}).code == 2);
    CHECK(invoke({"table", "--n-max", "40"}).code == 2);
    CHECK(invoke({"table", "--format", "xml"}).code == 2);
    CHECK(invoke({"verify", "--file", "/nonexistent/file.json"}).code == 2);
    CHECK(invoke({"construct", "--name", "diag-lines", "--n", "7"}).code == 2);
    CHECK(invoke({"puzzle", "--n", "5", "--x", "taco", "--grid", "hex"}).code == 2);
    CHECK(invoke({"serve", "--port", "0"}).code == 2);

    r = invoke({"--help"});
    CHECK(r.code == 0);
    for (const char *sub : {"classify", "ex", "ex-prime", "puzzle", "construct", "verify", "tripods", "table", "serve"})
        CHECK(r.out.find(sub) != std::string::npos);
    CHECK(invoke({"puzzle", "--help"}).out.find("[dfs-exact]") != std::string::npos);
}
