#ifndef TRIFREE_SERVICE_HPP
#define TRIFREE_SERVICE_HPP

// JSON service over dot-puzzle sessions. Handlers are plain functions from
// request data to (status, body) so they can be exercised without sockets;
// serve() wires them to an httplib server.

#include <trifree/constructions.hpp>
#include <trifree/dotpuzzle.hpp>

#include <httplib.h>
#include <json.hpp>

#include <list>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace trifree {

inline constexpr std::size_t default_session_cap = 128;

struct Response {
    int status = 200;
    nlohmann::json body;
};

inline Response error_response(int status, const std::string &message)
{
    return {status, {{"error", message}}};
}

/// Full state: the solution file fields plus derived data for display.
inline nlohmann::json state_to_json(const std::string &id, const PuzzleState &s)
{
    auto j = solution_to_json(s);
    j["id"] = id;
    j["score"] = s.score();
    j["rounds_played"] = s.rounds_played();
    j["finished"] = s.finished();
    j["survivors"] = points_to_json(s.survivors());
    j["killed"] = points_to_json(s.killed());
    j["hash"] = hash_hex(state_hash(s));
    return j;
}

inline nlohmann::json violation_to_json(const Violation &v)
{
    return {
        {"pair", {{v.first.x, v.first.y}, {v.second.x, v.second.y}}},
        {"rounds", {v.first_round, v.second_round}},
        {"config", std::string(mnemonic(v.kind))},
        {"message", v.message()},
    };
}

inline nlohmann::json killed_to_json(const PuzzleState &s)
{
    auto a = nlohmann::json::array();
    for (const auto &c : s.killed_with_causes())
        a.push_back({
            {"point", {c.point.x, c.point.y}},
            {"cause", {c.cause.x, c.cause.y}},
            {"cause_round", c.cause_round},
            {"config", std::string(mnemonic(c.kind))},
        });
    return {{"killed", a}};
}

/// In-memory sessions, least recently used evicted past the cap. The store
/// lock only guards the index; each session has its own reader/writer lock.
class SessionStore {
public:
    struct Session {
        explicit Session(PuzzleState s) : state(std::move(s)) {}
        std::shared_mutex mu;
        PuzzleState state;
    };

    explicit SessionStore(std::size_t cap = default_session_cap) : cap_(cap)
    {
        if (cap == 0)
            throw invalid_input("session cap must be positive");
    }

    std::string create(PuzzleState s)
    {
        std::lock_guard lock(mu_);
        std::string id = make_id(++counter_);
        lru_.push_front(id);
        map_.emplace(id, Entry{std::make_shared<Session>(std::move(s)), lru_.begin()});
        while (map_.size() > cap_) {
            map_.erase(lru_.back());
            lru_.pop_back();
        }
        return id;
    }

    std::shared_ptr<Session> find(const std::string &id)
    {
        std::lock_guard lock(mu_);
        auto it = map_.find(id);
        if (it == map_.end())
            return nullptr;
        lru_.splice(lru_.begin(), lru_, it->second.pos);
        return it->second.session;
    }

    std::size_t size() const
    {
        std::lock_guard lock(mu_);
        return map_.size();
    }

    std::size_t cap() const noexcept { return cap_; }

private:
    struct Entry {
        std::shared_ptr<Session> session;
        std::list<std::string>::iterator pos;
    };

    static std::string make_id(std::uint64_t k)
    {
        // Scrambled counter: unique, but not guessable from a neighbour.
        std::uint64_t h = 1469598103934665603ull;
        for (int i = 0; i < 8; ++i, k >>= 8) {
            h ^= k & 0xFF;
            h *= 1099511628211ull;
        }
        return hash_hex(h);
    }

    std::size_t cap_;
    mutable std::mutex mu_;
    std::list<std::string> lru_;
    std::unordered_map<std::string, Entry> map_;
    std::uint64_t counter_ = 0;
};

class PuzzleService {
public:
    explicit PuzzleService(std::size_t cap = default_session_cap) : store_(cap) {}

    SessionStore &store() noexcept { return store_; }

    /// POST /session {grid:{kind,n}, X:[...]}
    Response create(const std::string &body)
    {
        return guarded([&] {
            const auto j = parse(body);
            if (!j.is_object() || !j.contains("grid") || !j.contains("X"))
                return error_response(400, "body needs 'grid' and 'X'");
            PuzzleState s(grid_from_json(j["grid"]), forbidden_from_json(j["X"]));
            const auto id = store_.create(s);
            return Response{201, state_to_json(id, s)};
        });
    }

    /// POST /session/{id}/round {points:[[x,y],...]}
    Response round(const std::string &id, const std::string &body)
    {
        return guarded([&] {
            auto session = store_.find(id);
            if (!session)
                return unknown(id);
            const auto j = parse(body);
            if (!j.is_object() || !j.contains("points"))
                return error_response(400, "body needs 'points'");
            const auto pts = points_from_json(j["points"]);
            std::unique_lock lock(session->mu);
            if (auto v = session->state.check_round(pts)) {
                auto b = nlohmann::json{{"error", v->message()}, {"violation", violation_to_json(*v)}};
                return Response{400, b};
            }
            session->state.play_round(pts);
            return Response{200, state_to_json(id, session->state)};
        });
    }

    /// POST /session/{id}/undo
    Response undo(const std::string &id)
    {
        return guarded([&] {
            auto session = store_.find(id);
            if (!session)
                return unknown(id);
            std::unique_lock lock(session->mu);
            if (!session->state.undo())
                return error_response(400, "no round to undo");
            return Response{200, state_to_json(id, session->state)};
        });
    }

    /// GET /session/{id}
    Response get(const std::string &id)
    {
        return guarded([&] {
            auto session = store_.find(id);
            if (!session)
                return unknown(id);
            std::shared_lock lock(session->mu);
            return Response{200, state_to_json(id, session->state)};
        });
    }

    /// GET /session/{id}/killed
    Response killed(const std::string &id)
    {
        return guarded([&] {
            auto session = store_.find(id);
            if (!session)
                return unknown(id);
            std::shared_lock lock(session->mu);
            return Response{200, killed_to_json(session->state)};
        });
    }

    /// GET /constructions/{name}?n=
    Response construction(const std::string &name, const std::string &n_text)
    {
        return guarded([&] {
            bool known = false;
            for (const auto &c : construction_names())
                known = known || c == name;
            if (!known)
                return error_response(404, "unknown construction '" + name + "'");
            int n = 0;
            try {
                std::size_t used = 0;
                n = std::stoi(n_text, &used);
                if (used != n_text.size())
                    throw invalid_input("");
            } catch (const std::exception &) {
                return error_response(400, "query parameter n must be an integer, got '" + n_text + "'");
            }
            return Response{200, to_json(generate(construction_from_string(name, n)))};
        });
    }

private:
    static nlohmann::json parse(const std::string &body)
    {
        auto j = nlohmann::json::parse(body, nullptr, false);
        if (j.is_discarded())
            throw invalid_input("request body is not valid JSON");
        return j;
    }

    static Response unknown(const std::string &id) { return error_response(404, "unknown session '" + id + "'"); }

    template <class F>
    static Response guarded(F &&f)
    {
        try {
            return f();
        } catch (const round_violation &e) {
            return {400, {{"error", e.what()}, {"violation", violation_to_json(e.violation())}}};
        } catch (const invalid_input &e) {
            return error_response(400, e.what());
        } catch (const capacity_exceeded &e) {
            return error_response(400, e.what());
        } catch (const nlohmann::json::exception &e) {
            return error_response(400, e.what());
        }
    }

    SessionStore store_;
};

inline void install_routes(httplib::Server &server, PuzzleService &service)
{
    auto reply = [](httplib::Response &res, const Response &r) {
        res.status = r.status;
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_content(r.body.dump(), "application/json");
    };
    server.Post("/session", [&service, reply](const httplib::Request &req, httplib::Response &res) {
        reply(res, service.create(req.body));
    });
    server.Post(R"(/session/([0-9a-f]+)/round)", [&service, reply](const httplib::Request &req, httplib::Response &res) {
        reply(res, service.round(req.matches[1], req.body));
    });
    server.Post(R"(/session/([0-9a-f]+)/undo)", [&service, reply](const httplib::Request &req, httplib::Response &res) {
        reply(res, service.undo(req.matches[1]));
    });
    server.Get(R"(/session/([0-9a-f]+))", [&service, reply](const httplib::Request &req, httplib::Response &res) {
        reply(res, service.get(req.matches[1]));
    });
    server.Get(R"(/session/([0-9a-f]+)/killed)", [&service, reply](const httplib::Request &req, httplib::Response &res) {
        reply(res, service.killed(req.matches[1]));
    });
    server.Get(R"(/constructions/([^/?]+))", [&service, reply](const httplib::Request &req, httplib::Response &res) {
        const std::string n = req.has_param("n") ? req.get_param_value("n") : "";
        reply(res, service.construction(req.matches[1], n));
    });
    server.Options(R"(/.*)", [](const httplib::Request &, httplib::Response &res) {
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    server.set_error_handler([](const httplib::Request &, httplib::Response &res) {
        if (res.body.empty())
            res.set_content(nlohmann::json{{"error", "not found"}}.dump(), "application/json");
    });
}

} // namespace trifree

#endif
