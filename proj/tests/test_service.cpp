#include <doctest.h>
#include <httplib.h>

#include <array>
#include <cstdio>
#include <thread>

#include "clusterq/catalog.hpp"
#include "clusterq/service.hpp"
#include "http_server.hpp"

using namespace clusterq;

namespace {

json call(const std::string& op, const json& req) { return service::handle(op, req); }

struct Server {
    httplib::Server server;
    std::thread thread;
    int port = 0;

    Server() {
        http::install_routes(server);
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~Server() {
        server.stop();
        thread.join();
    }
};

Server& shared_server() {
    static Server s;
    return s;
}

httplib::Result post(const std::string& path, const std::string& body) {
    httplib::Client c("127.0.0.1", shared_server().port);
    return c.Post(path, body, "application/json");
}

// stdout of the command line tool, and its exit status
std::pair<std::string, int> run_cli(const std::string& args) {
    std::string cmd = std::string(CLUSTERQ_CLI) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (std::size_t got = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), got);
    int status = pclose(p);
    return {out, WEXITSTATUS(status)};
}

}  // namespace

TEST_CASE("quiver and seed round trips") {
    for (const auto& e : catalog()) {
        CAPTURE(e.name);
        auto j = quiver_to_json(e.quiver, e.labels);
        auto back = quiver_from_json(j);
        CHECK(back.quiver == e.quiver);
        CHECK(back.labels == e.labels);
    }
    auto s = apply_word(initial_seed(catalog_quiver("paper_2_4")), MutationWord{{0, 2, 1, 0}});
    CHECK(seed_from_json(seed_to_json(s)) == s);
    auto a = seed_from_json(json{{"quiver", "@a3"}});
    CHECK(a == initial_seed(catalog_quiver("a3")));
}

TEST_CASE("payload errors") {
    CHECK_THROWS_AS(quiver_from_json(json{{"n", "two"}}), PayloadError);
    CHECK_THROWS_AS(quiver_from_json(json{{"n", 2}}), PayloadError);
    CHECK_THROWS_AS(quiver_from_json(json("@nope")), PayloadError);
    CHECK_THROWS_AS(quiver_from_json(json::parse(R"({"n":2,"edges":[{"from":1,"to":2,"v":[2,3]},{"from":2,"to":1,"v":[1,1]}]})")),
                    ValidationError);
    CHECK_THROWS_AS(call("bogus", json::object()), PayloadError);
    CHECK_THROWS_AS(call("mutate", json{{"quiver", "@a2"}}), PayloadError);
    CHECK_THROWS_AS(call("mutate", json{{"quiver", "@a2"}, {"vertex", 3}}), ValidationError);
    // negative frozen exponent in a client-supplied seed
    json bad{{"quiver", json::parse(R"({"n":1,"m":1,"edges":[{"from":1,"to":2,"v":[1,1]}]})")},
             {"exact", json::parse(R"([[["1", [1, -1]]]])")}};
    CHECK_THROWS_AS(call("mutate", json{{"seed", bad}, {"vertex", 1}}), ValidationError);

    auto f = service::describe(std::make_exception_ptr(ValidationError({"A: b", "C: d"})));
    CHECK(f.http_status == 422);
    CHECK(f.exit_code == 1);
    CHECK(f.body["error"]["violations"].size() == 2);
    CHECK(service::describe(std::make_exception_ptr(PayloadError("x"))).http_status == 400);
    auto internal = service::describe(std::make_exception_ptr(NonExactDivision("x")));
    CHECK(internal.http_status == 500);
    CHECK(internal.exit_code == 3);
}

TEST_CASE("operations") {
    auto m = call("mutate", json{{"seed", {{"quiver", "@a2"}}}, {"vertex", 1}});
    CHECK(m["seed"]["cluster"][0] == "(x2 + 1)/x1");
    // mutating the returned seed again gives back the initial one
    auto back = call("mutate", json{{"seed", m["seed"]}, {"vertex", 1}});
    CHECK(back["seed"] == call("word", json{{"seed", {{"quiver", "@a2"}}}, {"word", json::array()}})["seed"]);

    auto w = call("word", json{{"quiver", "@ex_2_8_3"}, {"word", {1, 3}}});
    bool heavy = false;
    for (const auto& e : w["quiver"]["edges"]) heavy |= e["v"] == json{3, 3};
    CHECK(heavy);

    auto v = call("validate", json{{"quiver", json::parse(R"({"n":2,"edges":[{"from":1,"to":2,"v":[2,3]},{"from":2,"to":1,"v":[1,1]}]})")}});
    CHECK(v["valid"] == false);
    CHECK(!v["violations"].empty());
    CHECK(call("validate", json{{"quiver", "@e8"}})["valid"] == true);

    auto an = call("analyze", json{{"quiver", "@ex_3_8_a"}});
    CHECK(an["vv_symmetric"] == true);
    CHECK(an["weight"] == 4);
    CHECK(an["finite"] == true);
    CHECK(call("analyze", json{{"quiver", "@rigid_3_2_b"}})["rigid_vertices"] == json{"i"});
    auto badge = call("analyze", json{{"quiver", "@a3"}, {"root", "@a3"}});
    CHECK(badge["sigma_similar_to_root"] == true);

    auto sym = call("symmetric", json{{"quiver", "@a2"}});
    CHECK(sym["verdict"] == "yes");
    CHECK(sym["variables"]["symmetric_count"] == 5);
    CHECK(sym["variables"]["total"] == 5);
    auto rig = call("symmetric", json{{"quiver", "@rigid_3_2_a_y1z1"}, {"budget", {{"max_seeds", 50}}}});
    CHECK(rig["verdict"] == "no");
    CHECK(rig["reason"] == "rigid");
    CHECK(rig["rigid"]["label"] == "i");

    auto cls = call("class", json{{"quiver", "@a3"}, {"analyze", true}});
    CHECK(cls["status"] == "finite");
    CHECK(cls["member_count"] == 4);
    CHECK(cls["analyses"].size() == 4);
    auto inf = call("class", json{{"quiver", "@ex_2_8_3"}});
    CHECK(inf["status"] == "infinite");
    CHECK(inf.contains("witness_word"));
    auto cut = call("class", json{{"quiver", "@e7"}, {"budget", {{"max_members", 10}}}});
    CHECK(cut["status"] == "budget_exceeded");
    CHECK(service::truncated(cut));
    auto shallow = call("class", json{{"quiver", "@a4"}, {"budget", {{"class_depth", 1}}}});
    CHECK(shallow["truncated"] == true);

    auto vars = call("variables", json{{"quiver", "@a3"}});
    CHECK(vars["count"] == 9);
    CHECK(vars["truncated"] == false);
    auto mk = call("variables", json{{"quiver", "@markov_222"}, {"budget", {{"max_seeds", 30}}}});
    CHECK(mk["truncated"] == true);

    auto cat = call("catalog", json::object());
    std::set<std::string> names;
    for (const auto& e : cat["quivers"]) names.insert(e["name"].get<std::string>());
    for (const char* n : {"x6", "x7", "e8_11"}) CHECK(names.count(n) == 1);
    CHECK(call("catalog", json{{"name", "rigid_3_2_b"}})["marked"] == "i");
}

TEST_CASE("identical requests give identical responses") {
    json req{{"quiver", "@ex_3_8_c"}};
    for (const char* op : {"analyze", "class", "symmetric"}) CHECK(call(op, req).dump() == call(op, req).dump());
}

TEST_CASE("http endpoints") {
    auto r = post("/api/mutate", R"({"seed":{"quiver":"@a2"},"vertex":1})");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(json::parse(r->body)["seed"]["cluster"][0] == "(x2 + 1)/x1");

    auto bad = post("/api/mutate", "{not json");
    REQUIRE(bad);
    CHECK(bad->status == 400);
    auto missing = post("/api/class", R"({"budget":{}})");
    REQUIRE(missing);
    CHECK(missing->status == 400);
    auto invalid = post("/api/word", R"({"quiver":{"n":2,"edges":[{"from":1,"to":2,"v":[2,3]},{"from":2,"to":1,"v":[1,1]}]},"word":[1]})");
    REQUIRE(invalid);
    CHECK(invalid->status == 422);
    CHECK(!json::parse(invalid->body)["error"]["violations"].empty());

    auto cut = post("/api/class", R"({"quiver":"@e8","budget":{"max_members":5}})");
    REQUIRE(cut);
    CHECK(cut->status == 200);
    CHECK(json::parse(cut->body)["truncated"] == true);

    httplib::Client c("127.0.0.1", shared_server().port);
    auto cat = c.Get("/api/catalog");
    REQUIRE(cat);
    CHECK(cat->status == 200);
    CHECK(cat->body.find("\"e8_11\"") != std::string::npos);
    auto one = c.Get("/api/catalog/x7");
    REQUIRE(one);
    CHECK(json::parse(one->body)["quiver"]["n"] == 7);
    CHECK(c.Get("/api/catalog/nope")->status == 400);
    auto rigid = post("/api/analyze", R"({"quiver":"@rigid_3_2_b"})");
    REQUIRE(rigid);
    CHECK(json::parse(rigid->body)["rigid_vertices"] == json{"i"});
    auto listing = c.Get("/api");
    REQUIRE(listing);
    CHECK(json::parse(listing->body)["paths"].contains("/api/symmetric"));
}

TEST_CASE("command line and http bodies agree byte for byte") {
    struct Case {
        std::string cli;
        std::string path;
        std::string body;
        int exit_code;
    };
    std::vector<Case> cases{
        {"analyze @ex_3_8_a", "/api/analyze", R"({"quiver":"@ex_3_8_a"})", 0},
        {"symmetric @a2", "/api/symmetric", R"({"quiver":"@a2"})", 0},
        {"mutate @paper_2_4 -k 2", "/api/mutate", R"({"quiver":"@paper_2_4","vertex":2})", 0},
        {"mutate @a2 --word 1,2,1", "/api/word", R"({"quiver":"@a2","word":[1,2,1]})", 0},
        {"class @a4", "/api/class", R"({"quiver":"@a4"})", 0},
        {"class @e7 --budget 10", "/api/class", R"({"quiver":"@e7","budget":{"max_members":10}})", 2},
        {"variables @a3", "/api/variables", R"({"quiver":"@a3"})", 0},
        {"mutate @a2 -k 3", "/api/mutate", R"({"quiver":"@a2","vertex":3})", 1},
    };
    for (const auto& c : cases) {
        CAPTURE(c.cli);
        auto [out, code] = run_cli(c.cli);
        CHECK(code == c.exit_code);
        auto r = post(c.path, c.body);
        REQUIRE(r);
        if (code == 0 || code == 2) {
            CHECK(r->status == 200);
            CHECK(out == r->body + "\n");
        } else {
            CHECK(r->status == 422);
        }
    }
    auto [text, code] = run_cli("--format pretty analyze @ex_3_8_a");
    CHECK(code == 0);
    CHECK(text.find("vv_symmetric: true") != std::string::npos);
    auto [inl, c2] = run_cli(R"(validate '{"n":2,"edges":[{"from":1,"to":2,"v":[1,1]}]}')");
    CHECK(c2 == 0);
    CHECK(json::parse(inl)["valid"] == true);
}
