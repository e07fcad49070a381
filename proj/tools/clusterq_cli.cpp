// clusterq: command line front end and HTTP service.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "clusterq/service.hpp"
#include "http_server.hpp"

using clusterq::json;
namespace service = clusterq::service;

namespace {

// file path, inline JSON or @catalog-name
json quiver_argument(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') return arg;
    std::string text = arg;
    auto first = arg.find_first_not_of(" \t\n");
    if (first == std::string::npos || arg[first] != '{') {
        std::ifstream in(arg);
        if (!in) throw clusterq::PayloadError("cannot read quiver file '" + arg + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw clusterq::PayloadError(std::string("quiver is not valid JSON: ") + e.what());
    }
}

std::vector<int> parse_word(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw clusterq::PayloadError("bad word letter '" + item + "'");
        }
    }
    return out;
}

bool scalar(const json& j) { return !j.is_object() && !j.is_array(); }

std::string inline_value(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// objects of scalars print on one line inside lists
bool flat(const json& j) {
    if (!j.is_object()) return false;
    for (const auto& [k, v] : j.items())
        if (!scalar(v) && !(v.is_array() && std::all_of(v.begin(), v.end(), scalar))) return false;
    return true;
}

void render(std::ostream& os, const json& j, int indent) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (scalar(v) || (v.is_array() && std::all_of(v.begin(), v.end(), scalar))) {
                os << pad << k << ": " << inline_value(v) << "\n";
            } else {
                os << pad << k << ":\n";
                render(os, v, indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (scalar(v)) {
                os << pad << "- " << inline_value(v) << "\n";
            } else if (flat(v)) {
                os << pad << "-";
                const char* sep = " ";
                for (const auto& [k, x] : v.items()) {
                    os << sep << k << ": " << inline_value(x);
                    sep = ", ";
                }
                os << "\n";
            } else {
                os << pad << "-\n";
                render(os, v, indent + 2);
            }
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cluster algebra and valued quiver toolkit"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "pretty"}));
    app.fallthrough();

    json request = json::object();
    std::string op;
    std::string quiver;
    auto need_quiver = [&](CLI::App* c) { c->add_option("quiver", quiver, "File, inline JSON or @name")->required(); };
    auto add_budget = [&](CLI::App* c, const char* flag, const char* key, const char* help) {
        c->add_option_function<int>(flag, [&request, key](int v) { request["budget"][key] = v; }, help);
    };

    auto* mutate = app.add_subcommand("mutate", "Mutate a quiver at a vertex or along a word");
    need_quiver(mutate);
    int vertex = 0;
    std::string word;
    bool with_seed = false;
    mutate->add_option("-k,--vertex", vertex, "Vertex (1-based)");
    mutate->add_option("--word", word, "Word i,j,k written left to right; the last letter acts first");
    mutate->add_flag("--seed", with_seed, "Also print the mutated initial seed");

    auto* klass = app.add_subcommand("class", "Explore the mutation class");
    need_quiver(klass);
    add_budget(klass, "--budget", "max_members", "Member budget");
    add_budget(klass, "--depth", "class_depth", "Longest witness word");
    bool analyze_members = false;
    klass->add_flag("--analyze", analyze_members, "Per-member flags");

    auto* analyze = app.add_subcommand("analyze", "Weight, finiteness, rigidity, symmetry, avenues");
    need_quiver(analyze);
    add_budget(analyze, "--budget", "max_members", "Member budget");

    auto* symmetric = app.add_subcommand("symmetric", "Symmetric algebra verdict and variable comparison");
    need_quiver(symmetric);
    add_budget(symmetric, "--budget", "max_members", "Member budget");
    add_budget(symmetric, "--seeds", "max_seeds", "Seed budget");
    add_budget(symmetric, "--depth", "max_depth", "Seed depth");
    bool initial_only = false, modulo_sign = false;
    symmetric->add_flag("--initial-only", initial_only, "Scan only the input quiver for rigid vertices");
    symmetric->add_flag("--modulo-sign", modulo_sign, "Count seeds whose quiver is +-sigma-similar");

    auto* variables = app.add_subcommand("variables", "Enumerate cluster variables");
    need_quiver(variables);
    add_budget(variables, "--seeds", "max_seeds", "Seed budget");
    add_budget(variables, "--depth", "max_depth", "Seed depth");

    auto* validate = app.add_subcommand("validate", "Check a quiver");
    need_quiver(validate);

    auto* catalog = app.add_subcommand("catalog", "List built-in quivers or print one");
    std::string name;
    catalog->add_option("name", name, "Catalog name");

    auto* serve = app.add_subcommand("serve", "Start the HTTP service");
    int port = 8080;
    if (const char* env = std::getenv("CLUSTERQ_PORT")) port = std::atoi(env);
    std::string host = "127.0.0.1";
    serve->add_option("--port", port, "Port (default $CLUSTERQ_PORT or 8080)");
    serve->add_option("--host", host, "Interface");

    CLI11_PARSE(app, argc, argv);

    if (serve->parsed()) return clusterq::http::serve(host, port) == 0 ? 0 : 3;

    try {
        if (catalog->parsed()) {
            op = "catalog";
            if (!name.empty()) request["name"] = name;
        } else {
            request["quiver"] = quiver_argument(quiver);
            if (mutate->parsed()) {
                if (!word.empty()) {
                    op = "word";
                    request["word"] = parse_word(word);
                } else {
                    if (mutate->count("--vertex") == 0) throw clusterq::PayloadError("mutate needs -k or --word");
                    op = "mutate";
                    request["vertex"] = vertex;
                }
                if (with_seed) request["with_seed"] = true;
            } else if (klass->parsed()) {
                op = "class";
                if (analyze_members) request["analyze"] = true;
            } else if (analyze->parsed()) {
                op = "analyze";
            } else if (symmetric->parsed()) {
                op = "symmetric";
                if (initial_only) request["options"]["initial_only"] = true;
                if (modulo_sign) request["options"]["modulo_sign"] = true;
            } else if (variables->parsed()) {
                op = "variables";
            } else if (validate->parsed()) {
                op = "validate";
            }
        }
        auto result = service::handle(op, request);
        if (format == "pretty")
            render(std::cout, result, 0);
        else
            std::cout << result.dump() << "\n";
        if (op == "validate" && !result.value("valid", true)) return 1;
        return service::truncated(result) ? 2 : 0;
    } catch (...) {
        auto f = service::describe(std::current_exception());
        if (format == "pretty")
            render(std::cerr, f.body, 0);
        else
            std::cerr << f.body.dump() << "\n";
        return f.exit_code;
    }
}
