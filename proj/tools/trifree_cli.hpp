#ifndef TRIFREE_CLI_HPP
#define TRIFREE_CLI_HPP

// Command-line front end. run() takes the arguments after the program name
// and returns the exit code: 0 success, 1 verification failure, 2 usage.

#include <trifree/constructions.hpp>
#include <trifree/extremal.hpp>
#include <trifree/puzzle_search.hpp>
#include <trifree/reductions.hpp>
#include <trifree/service.hpp>
#include <trifree/tripods.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace trifree::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

inline nlohmann::json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw invalid_input("cannot open '" + path + "'");
    auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw invalid_input("'" + path + "' is not valid JSON");
    return j;
}

inline void write_text(const std::string &path, const std::string &text)
{
    std::ofstream f(path);
    if (!f)
        throw invalid_input("cannot write '" + path + "'");
    f << text;
    if (!f)
        throw invalid_input("write to '" + path + "' failed");
}

/// Emits JSON to `path`, or to `out` when the path is empty or "-".
inline void emit_json(const nlohmann::json &j, const std::string &path, std::ostream &out)
{
    if (path.empty() || path == "-")
        out << j.dump(2) << '\n';
    else
        write_text(path, j.dump(2) + "\n");
}

inline Triangle parse_triangle(const std::string &s)
{
    std::vector<int> v;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(part, &used));
            if (used != part.size())
                throw invalid_input("");
        } catch (const std::exception &) {
            throw invalid_input("bad vertex index '" + part + "' in triangle '" + s + "'");
        }
    }
    if (v.size() != 3)
        throw invalid_input("triangle '" + s + "' needs three comma-separated indices");
    return {v[0], v[1], v[2]};
}

struct Options {
    int n = 0;
    int m = 0;
    std::string x;
    std::string t1, t2;
    bool geometric = false;
    bool as_json = false;
    std::uint64_t budget = 100'000'000;
    std::uint64_t seed = 1;
    std::string grid = "triangular";
    std::string strategy = "dfs-exact";
    std::string name;
    std::string file;
    std::string out;
    std::string encoding;
    std::string to;
    int cap = default_brute_force_cap;
    int n_max = 6;
    std::string format = "csv";
    std::string host = "127.0.0.1";
    int port = 8080;
};

namespace detail {

inline int print_solve(const SolveResult &r, const Options &o, std::ostream &out, std::ostream &err)
{
    if (o.as_json)
        out << to_json(r).dump(2) << '\n';
    else if (r.exact)
        out << r.optimum << '\n';
    else {
        out << r.optimum << ".." << r.upper_bound << '\n';
        err << "budget exhausted; value is only bracketed\n";
    }
    if (!o.out.empty())
        emit_json(family_to_json(r.n, r.forbidden, r.witness), o.out, out);
    return exit_ok;
}

inline int verify_file(const Options &o, std::ostream &out)
{
    auto j = read_json_file(o.file);
    if (!j.is_object())
        throw invalid_input("'" + o.file + "' does not hold a JSON object");
    if (j.contains("triangles")) {
        const int m = o.n ? o.n : j.value("n", 0);
        const auto x = o.x.empty() ? forbidden_from_json(j.at("X")) : ForbiddenSet::parse(o.x);
        const auto fam = triangles_from_json(j["triangles"]);
        const auto v = verify_family(ConvexArena(m), x, fam);
        if (v.pass()) {
            out << "ok: " << fam.size() << " triangles on " << m << " points avoid {" << x.to_string() << "}\n";
            return exit_ok;
        }
        const auto &f = v.offences.front();
        out << "fail: " << f.first.to_string() << " and " << f.second.to_string() << " form "
            << mnemonic(f.kind) << " (" << v.offences.size() << " offending pairs)\n";
        return exit_failed;
    }
    if (!o.x.empty())
        j["X"] = ForbiddenSet::parse(o.x).mnemonics();
    Encoding seen{};
    const auto v = verify_encoded(j, &seen);
    if (!v.ok) {
        out << "fail: " << v.reason << '\n';
        return exit_failed;
    }
    if (seen == Encoding::Puzzle) {
        const auto s = solution_from_json(j);
        out << "ok: score " << s.score() << ", hash " << hash_hex(state_hash(s)) << '\n';
    } else
        out << "ok: valid " << to_string(seen) << " encoding\n";
    return exit_ok;
}

} // namespace detail

inline int run(std::vector<std::string> args, std::ostream &out, std::ostream &err)
{
    Options o;
    CLI::App app{"Extremal problems for families of triangles on convex point sets", "trifree"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    auto *classify = app.add_subcommand("classify", "Classify a pair of triangles on a convex m-gon");
    classify->add_option("--m", o.m, "Number of points")->required();
    classify->add_option("t1", o.t1, "First triangle, e.g. 0,1,2")->required();
    classify->add_option("t2", o.t2, "Second triangle")->required();
    classify->add_flag("--geometric", o.geometric, "Use the coordinate classifier");

    auto add_x = [&](CLI::App *c, bool required) {
        auto *opt = c->add_option("--x", o.x, "Forbidden configurations, comma list (or all, none)");
        if (required)
            opt->required();
    };
    auto add_budget = [&](CLI::App *c) {
        c->add_option("--budget", o.budget, "Search node budget")->capture_default_str();
    };

    auto *ex_cmd = app.add_subcommand("ex", "Largest X-free family of triangles on n points");
    auto *exp_cmd = app.add_subcommand("ex-prime", "As ex, for triangles with two top vertices and one bottom");
    for (auto *c : {ex_cmd, exp_cmd}) {
        c->add_option("--n", o.n, "Number of points")->required();
        add_x(c, true);
        add_budget(c);
        c->add_flag("--json", o.as_json, "Print the full result as JSON");
        c->add_option("--out", o.out, "Write the witness family to this file");
    }

    auto *puzzle = app.add_subcommand("puzzle", "Search the dot puzzle");
    puzzle->add_option("--grid", o.grid, "triangular or square")->capture_default_str();
    puzzle->add_option("--n", o.n, "Board size")->required();
    add_x(puzzle, true);
    puzzle->add_option("--strategy", o.strategy, "greedy-rounds, randomized-restart or dfs-exact")
        ->capture_default_str();
    add_budget(puzzle);
    puzzle->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    puzzle->add_option("--out", o.out, "Write the solution file here");

    auto *construct = app.add_subcommand("construct", "Generate a named construction");
    construct->add_option("--name", o.name, "Construction name (list them with the constructions subcommand)")->required();
    construct->add_option("--n", o.n, "Size parameter")->required();
    construct->add_option("--out", o.out, "Output file (default stdout)");

    auto *list = app.add_subcommand("constructions", "List construction names");

    auto *verify_cmd = app.add_subcommand("verify", "Verify a family, puzzle solution or tripod encoding file");
    verify_cmd->add_option("--file", o.file, "Input JSON")->required();
    add_x(verify_cmd, false);
    verify_cmd->add_option("--n", o.n, "Number of points, overriding the file");

    auto *tripods = app.add_subcommand("tripods", "Tripod packings and their encodings");
    tripods->require_subcommand(1);
    auto *tp_verify = tripods->add_subcommand("verify", "Verify an encoded object");
    tp_verify->add_option("--file", o.file, "Input JSON")->required();
    auto *tp_convert = tripods->add_subcommand("convert", "Convert between encodings");
    tp_convert->add_option("--file", o.file, "Input JSON")->required();
    tp_convert->add_option("--to", o.to, "Target encoding")->required();
    tp_convert->add_option("--out", o.out, "Output file (default stdout)");
    auto *tp_max = tripods->add_subcommand("max", "Brute-force maximum in one encoding");
    tp_max->add_option("--encoding", o.encoding, "matrix, triples, tripods, matching or puzzle")->required();
    tp_max->add_option("--n", o.n, "Order")->required();
    tp_max->add_option("--cap", o.cap, "Largest n attempted")->capture_default_str();
    tp_max->add_flag("--json", o.as_json, "Print the witness as JSON");

    auto *table = app.add_subcommand("table", "Exact ex and ex' for all 256 forbidden sets");
    table->add_option("--n-max", o.n_max, "Largest n")->capture_default_str()->check(CLI::Range(3, 12));
    table->add_option("--format", o.format, "csv, json or markdown")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json", "markdown"}));
    table->add_option("--budget", o.budget, "Node budget per cell")->default_val(20'000'000);
    table->add_option("--out", o.out, "Output file (default stdout)");

    auto *serve = app.add_subcommand("serve", "Run the JSON puzzle service");
    serve->add_option("--port", o.port, "TCP port")->capture_default_str()->check(CLI::Range(1, 65535));
    serve->add_option("--host", o.host, "Bind address")->capture_default_str();

    if (!args.empty() && !args.front().empty() && args.front()[0] != '-') {
        bool known = false;
        for (const auto *c : app.get_subcommands({}))
            known = known || c->get_name() == args.front();
        if (!known) {
            err << "unknown subcommand '" << args.front() << "'\nRun with --help for more information.\n";
            return exit_usage;
        }
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*classify) {
            const ConvexArena arena(o.m);
            const auto a = parse_triangle(o.t1), b = parse_triangle(o.t2);
            out << mnemonic(o.geometric ? classify_geometric(arena, a, b) : classify_pair(arena, a, b)) << '\n';
            return exit_ok;
        }
        if (*ex_cmd || *exp_cmd) {
            MisOptions mo;
            mo.node_budget = o.budget;
            const auto x = ForbiddenSet::parse(o.x);
            return detail::print_solve(*ex_cmd ? ex(o.n, x, mo) : ex_prime(o.n, x, mo), o, out, err);
        }
        if (*puzzle) {
            const auto r = search_best(Grid(grid_kind_from_string(o.grid), o.n), ForbiddenSet::parse(o.x),
                                       search_strategy_from_string(o.strategy), o.budget, o.seed);
            out << r.best.score() << (r.exact ? "" : " (not proved optimal)") << '\n';
            if (!o.out.empty())
                emit_json(solution_to_json(r.best), o.out, out);
            return exit_ok;
        }
        if (*construct) {
            emit_json(to_json(generate(construction_from_string(o.name, o.n))), o.out, out);
            return exit_ok;
        }
        if (*list) {
            for (const auto &n : construction_names())
                out << n << '\n';
            return exit_ok;
        }
        if (*verify_cmd)
            return detail::verify_file(o, out);
        if (*tp_verify) {
            Encoding seen{};
            const auto v = verify_encoded(read_json_file(o.file), &seen);
            out << (v.ok ? "ok: valid " + to_string(seen) + " encoding" : "fail: " + v.reason) << '\n';
            return v.ok ? exit_ok : exit_failed;
        }
        if (*tp_convert) {
            emit_json(convert_encoded(read_json_file(o.file), encoding_from_string(o.to)), o.out, out);
            return exit_ok;
        }
        if (*tp_max) {
            const auto r = brute_force_max(encoding_from_string(o.encoding), o.n, o.cap);
            if (o.as_json)
                out << nlohmann::json{{"maximum", r.maximum}, {"witness", r.witness}}.dump(2) << '\n';
            else
                out << r.maximum << '\n';
            return exit_ok;
        }
        if (*table) {
            const auto t = build_table(o.n_max, o.budget);
            std::string text = o.format == "json"       ? table_json(t).dump(2) + "\n"
                               : o.format == "markdown" ? table_markdown(t)
                                                        : table_csv(t);
            if (o.out.empty())
                out << text;
            else
                write_text(o.out, text);
            for (const auto &f : t.flags)
                err << "flag: {" << f.x.to_string() << "} n=" << f.n << ' ' << f.quantity << '=' << f.value << ": "
                    << f.reason << '\n';
            return t.flags.empty() ? exit_ok : exit_failed;
        }
        if (*serve) {
            PuzzleService service;
            httplib::Server server;
            install_routes(server, service);
            if (!server.bind_to_port(o.host, o.port)) {
                err << "error: cannot bind " << o.host << ':' << o.port << '\n';
                return exit_usage;
            }
            out << "listening on http://" << o.host << ':' << o.port << std::endl;
            server.listen_after_bind();
            return exit_ok;
        }
    } catch (const invalid_input &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const capacity_exceeded &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const nlohmann::json::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

} // namespace trifree::cli

#endif
