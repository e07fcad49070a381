#include "clusterq/service.hpp"

#include <algorithm>

#include "clusterq/catalog.hpp"

namespace clusterq::service {

namespace {

int budget_value(const json& req, const char* name, int fallback, int cap) {
    if (!req.contains("budget")) return fallback;
    const auto& b = req.at("budget");
    if (!b.is_object()) throw PayloadError("budget must be an object");
    if (!b.contains(name)) return fallback;
    if (!b.at(name).is_number_integer()) throw PayloadError(std::string("budget.") + name + " must be an integer");
    auto v = b.at(name).get<std::int64_t>();
    if (v < 0) throw PayloadError(std::string("budget.") + name + " must be nonnegative");
    return static_cast<int>(std::min<std::int64_t>(v, cap));
}

bool option(const json& req, const char* name) {
    if (!req.contains("options")) return false;
    const auto& o = req.at("options");
    if (!o.is_object()) throw PayloadError("options must be an object");
    if (!o.contains(name)) return false;
    if (!o.at(name).is_boolean()) throw PayloadError(std::string("options.") + name + " must be a boolean");
    return o.at(name).get<bool>();
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw PayloadError(std::string("missing field '") + name + "'");
    return j.at(name);
}

json perm_json(const Permutation& p) {
    json out = json::array();
    for (int x : p.image) out.push_back(x + 1);
    return out;
}

json tri(Tri t) { return to_string(t); }

std::vector<std::string> exchangeable_labels(const std::vector<std::string>& labels, int n) {
    return {labels.begin(), labels.begin() + n};
}

json vertex_json(int v, const std::vector<std::string>& labels) {
    return {{"vertex", v + 1}, {"label", labels[static_cast<std::size_t>(v)]}};
}

json op_validate(const json& req, const Limits&) {
    const auto& qj = field(req, "quiver");
    if (qj.is_string() || (qj.is_object() && qj.contains("catalog"))) {
        auto lq = quiver_from_json(qj);
        return {{"valid", true}, {"violations", json::array()}, {"rank", lq.quiver.rank()},
                {"frozen", lq.quiver.frozen_count()}, {"weight", weight(lq.quiver)}};
    }
    auto spec = spec_from_json(qj);
    auto violations = validate(spec);
    json out{{"valid", violations.empty()}, {"violations", violations}};
    if (violations.empty()) {
        auto q = ValuedQuiver::build(spec);
        out["rank"] = q.rank();
        out["frozen"] = q.frozen_count();
        out["weight"] = weight(q);
    }
    return out;
}

int vertex_arg(const json& req, int rank) {
    const auto& v = field(req, "vertex");
    if (!v.is_number_integer()) throw PayloadError("vertex must be an integer");
    auto k = v.get<std::int64_t>();
    if (k < 1 || k > rank)
        throw ValidationError({"VertexOutOfRange: " + std::to_string(k) + " is not an exchangeable vertex"});
    return static_cast<int>(k - 1);
}

// Either {"seed": S} or {"quiver": Q}, mutated at "vertex" or along "word".
json apply_to_payload(const json& req, bool single) {
    auto word_for = [&](int rank) {
        return single ? MutationWord{{vertex_arg(req, rank)}} : word_from_json(field(req, "word"), rank);
    };
    if (req.contains("seed")) {
        std::vector<std::string> labels;
        auto s = seed_from_json(req.at("seed"), &labels);
        auto w = word_for(s.quiver.rank());
        return {{"seed", seed_to_json(apply_word(s, w), labels)}, {"word", word_to_json(w)}};
    }
    auto lq = quiver_from_json(field(req, "quiver"));
    auto w = word_for(lq.quiver.rank());
    json out{{"quiver", quiver_to_json(apply_word(lq.quiver, w), lq.labels)}, {"word", word_to_json(w)}};
    if (req.value("with_seed", false)) out["seed"] = seed_to_json(apply_word(initial_seed(lq.quiver), w), lq.labels);
    return out;
}

json op_mutate(const json& req, const Limits&) { return apply_to_payload(req, true); }
json op_word(const json& req, const Limits&) { return apply_to_payload(req, false); }

ClassBudget class_budget(const json& req, const Limits& limits) {
    ClassBudget b;
    b.max_members = budget_value(req, "max_members", limits.max_members, 500000);
    b.max_depth = budget_value(req, "class_depth", -1, 10000);
    return b;
}

SeedBudget seed_budget(const json& req, const Limits& limits) {
    SeedBudget b;
    b.max_seeds = budget_value(req, "max_seeds", limits.max_seeds, 500000);
    b.max_depth = budget_value(req, "max_depth", limits.max_depth, 200);
    return b;
}

json op_class(const json& req, const Limits& limits) {
    auto lq = quiver_from_json(field(req, "quiver"));
    auto r = explore_class(lq.quiver, class_budget(req, limits));
    if (req.value("analyze", false)) analyze_members(r);
    return class_report_to_json(r, exchangeable_labels(lq.labels, lq.quiver.rank()));
}

json op_analyze(const json& req, const Limits& limits) {
    auto lq = quiver_from_json(field(req, "quiver"));
    const auto& q = lq.quiver;
    auto labels = lq.labels;
    auto r = explore_class(q, class_budget(req, limits));

    json out{{"rank", q.rank()}, {"frozen", q.frozen_count()}};
    out["class_status"] = to_string(r.status);
    out["finite"] = r.status == ClassStatus::Finite          ? json(true)
                    : r.status == ClassStatus::InfiniteWitness ? json(false)
                                                               : json(nullptr);
    out["truncated"] = r.status == ClassStatus::BudgetExceeded;
    out["member_count"] = r.members.size();
    out["weight"] = r.class_weight >= 0 ? json(r.class_weight) : json(nullptr);
    out["quiver_weight"] = weight(q);
    out["simply_laced"] = is_simply_laced(q);
    out["zigzag"] = is_zigzag(q);
    if (r.status == ClassStatus::InfiniteWitness) out["witness_word"] = word_to_json(r.witness_word);

    json rigid = json::array(), rigid_labels = json::array();
    for (const auto& rv : detect_rigid_vertices(q)) {
        auto v = vertex_json(rv.vertex, labels);
        v["pattern"] = rv.pattern;
        rigid.push_back(v);
        auto l = labels[static_cast<std::size_t>(rv.vertex)];
        if (std::find(rigid_labels.begin(), rigid_labels.end(), l) == rigid_labels.end()) rigid_labels.push_back(l);
    }
    out["rigid_vertices"] = rigid_labels;
    out["rigid"] = rigid;

    auto vv = is_vv_sigma_symmetric(q);
    out["vv_symmetric"] = vv.symmetric;
    json certs = json::array();
    for (const auto& c : vv.certificates)
        certs.push_back({{"vertex", c.vertex + 1},
                         {"counter", c.counter >= 0 ? json(c.counter + 1) : json(nullptr)},
                         {"sigma", perm_json(c.sigma)},
                         {"sign", c.sign}});
    out["vv_certificates"] = certs;
    out["vv_failing_vertex"] = vv.failing_vertex >= 0 ? json(vv.failing_vertex + 1) : json(nullptr);

    json cycles = json::array();
    for (auto t : detect_unbounded_3cycles(q)) cycles.push_back({t[0] + 1, t[1] + 1, t[2] + 1});
    out["unbounded_3cycles"] = cycles;
    auto pre = is_pre_unbounded(q, 3, 2000);
    out["pre_unbounded"] = {{"found", pre.found}, {"word", word_to_json(pre.word)}};

    json avenues = json::array();
    for (int i = 0; i < q.rank(); ++i) {
        auto a = has_simply_laced_avenue(q, i);
        json path = json::array();
        for (int v : a.path) path.push_back(v + 1);
        auto entry = vertex_json(i, labels);
        entry["exists"] = a.exists;
        entry["path"] = path;
        avenues.push_back(entry);
    }
    out["avenues"] = avenues;

    if (req.contains("root")) {
        auto root = quiver_from_json(req.at("root")).quiver;
        auto m = find_symmetry(root, q);
        out["sigma_similar_to_root"] = m.has_value();
        if (m) out["sigma"] = perm_json(m->sigma);
    }
    return out;
}

json op_symmetric(const json& req, const Limits& limits) {
    auto lq = quiver_from_json(field(req, "quiver"));
    const auto& q = lq.quiver;
    auto v = is_symmetric_algebra(q, class_budget(req, limits), option(req, "initial_only"));
    json out{{"verdict", tri(v.verdict)}, {"reason", v.reason}, {"truncated", v.reason == "budget"}};
    if (v.reason == "infinite") out["witness_word"] = word_to_json(v.witness);
    if (v.reason == "rigid") {
        auto r = vertex_json(v.rigid.vertex, lq.labels);
        r["pattern"] = v.rigid.pattern;
        r["member"] = v.member;
        out["rigid"] = r;
    }
    auto sv = symmetric_cluster_variables(q, seed_budget(req, limits), option(req, "modulo_sign"));
    json sym = json::array(), all = json::array();
    for (const auto& x : sv.symmetric) sym.push_back(to_fraction_string(x));
    for (const auto& x : sv.all) all.push_back(to_fraction_string(x));
    out["variables"] = {{"status", to_string(sv.status)},
                        {"truncated", sv.status == ClosureStatus::Truncated},
                        {"equal", tri(sv.equal)},
                        {"symmetric_count", sv.symmetric.size()},
                        {"total", sv.all.size()},
                        {"seeds", sv.seeds},
                        {"symmetric_seeds", sv.symmetric_seeds},
                        {"symmetric", sym},
                        {"all", all}};
    return out;
}

json op_variables(const json& req, const Limits& limits) {
    auto lq = quiver_from_json(field(req, "quiver"));
    auto e = enumerate_cluster_variables(lq.quiver, seed_budget(req, limits));
    json vars = json::array();
    for (const auto& x : e.variables) vars.push_back(to_fraction_string(x));
    return {{"status", to_string(e.status)},
            {"truncated", e.status == ClosureStatus::Truncated},
            {"count", e.variables.size()},
            {"seeds", e.seeds},
            {"variables", vars}};
}

json op_catalog(const json& req, const Limits&) {
    if (req.is_object() && req.contains("name")) {
        if (!req.at("name").is_string()) throw PayloadError("name must be a string");
        auto name = req.at("name").get<std::string>();
        if (!name.empty() && name[0] == '@') name.erase(0, 1);
        const CatalogEntry* e = nullptr;
        try {
            e = &catalog_entry(name);
        } catch (const Error&) {
            throw PayloadError("unknown catalog quiver '" + name + "'");
        }
        return {{"name", e->name},
                {"description", e->description},
                {"quiver", quiver_to_json(e->quiver, e->labels)},
                {"marked", e->marked_vertex >= 0 ? json(e->labels[static_cast<std::size_t>(e->marked_vertex)]) : json(nullptr)}};
    }
    json list = json::array();
    for (const auto& e : catalog())
        list.push_back({{"name", e.name}, {"description", e.description}, {"rank", e.quiver.rank()},
                        {"frozen", e.quiver.frozen_count()}});
    json aliases = json::object();
    for (const auto& [a, b] : catalog_aliases()) aliases[a] = b;
    return {{"quivers", list}, {"aliases", aliases}};
}

using Handler = json (*)(const json&, const Limits&);

const std::vector<std::pair<std::string, Handler>>& table() {
    static const std::vector<std::pair<std::string, Handler>> t{
        {"validate", op_validate}, {"mutate", op_mutate},       {"word", op_word},
        {"class", op_class},       {"analyze", op_analyze},     {"symmetric", op_symmetric},
        {"variables", op_variables}, {"catalog", op_catalog},
    };
    return t;
}

}  // namespace

const std::vector<std::string>& operations() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [n, h] : table()) out.push_back(n);
        return out;
    }();
    return names;
}

json handle(const std::string& op, const json& request, const Limits& limits) {
    for (const auto& [name, h] : table())
        if (name == op) {
            if (!request.is_object()) throw PayloadError("request must be a JSON object");
            return h(request, limits);
        }
    throw PayloadError("unknown operation '" + op + "'");
}

Failure describe(std::exception_ptr e) {
    Failure f;
    try {
        std::rethrow_exception(e);
    } catch (const PayloadError& x) {
        f = {400, 1, {{"error", {{"code", "PayloadError"}, {"message", x.what()}}}}};
    } catch (const json::exception& x) {
        f = {400, 1, {{"error", {{"code", "PayloadError"}, {"message", x.what()}}}}};
    } catch (const ValidationError& x) {
        f = {422, 1, {{"error", {{"code", "ValidationError"}, {"message", x.what()}, {"violations", x.violations()}}}}};
    } catch (const LimitExceeded& x) {
        f = {422, 1, {{"error", {{"code", "LimitExceeded"}, {"message", x.what()}}}}};
    } catch (const NonExactDivision& x) {
        f = {500, 3, {{"error", {{"code", "NonExactDivision"}, {"message", x.what()}}}}};
    } catch (const LaurentViolation& x) {
        f = {500, 3, {{"error", {{"code", "LaurentViolation"}, {"message", x.what()}}}}};
    } catch (const std::exception& x) {
        f = {500, 3, {{"error", {{"code", "InternalError"}, {"message", x.what()}}}}};
    }
    return f;
}

bool truncated(const json& result) { return result.is_object() && result.value("truncated", false); }

}  // namespace clusterq::service
