#include "clusterq/serialize.hpp"

#include "clusterq/catalog.hpp"

namespace clusterq {

namespace {

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw PayloadError(std::string("missing field '") + name + "'");
    return j.at(name);
}

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw PayloadError(std::string(what) + " must be an integer");
    auto v = j.get<std::int64_t>();
    if (v < -1000000 || v > 1000000) throw PayloadError(std::string(what) + " out of range");
    return static_cast<int>(v);
}

std::vector<std::string> labels_or_default(const ValuedQuiver& q, const std::vector<std::string>& labels) {
    return labels.size() == static_cast<std::size_t>(q.size()) ? labels : default_labels(q);
}

}  // namespace

std::vector<std::string> default_labels(const ValuedQuiver& q) {
    std::vector<std::string> out;
    for (int v = 1; v <= q.size(); ++v) out.push_back(std::to_string(v));
    return out;
}

QuiverSpec spec_from_json(const json& j) {
    if (!j.is_object()) throw PayloadError("quiver must be an object");
    QuiverSpec s;
    s.n = as_int(field(j, "n"), "n");
    s.m = j.contains("m") ? as_int(j.at("m"), "m") : 0;
    if (s.n < 0 || s.m < 0 || s.n + s.m > 64) throw PayloadError("n and m must be nonnegative with n + m <= 64");
    const auto& edges = field(j, "edges");
    if (!edges.is_array()) throw PayloadError("edges must be an array");
    for (const auto& e : edges) {
        const auto& v = field(e, "v");
        if (!v.is_array() || v.size() != 2) throw PayloadError("edge valuation must be a pair");
        s.edges.push_back({as_int(field(e, "from"), "from") - 1, as_int(field(e, "to"), "to") - 1,
                           {as_int(v[0], "valuation"), as_int(v[1], "valuation")}});
    }
    if (j.contains("d") && !j.at("d").is_null()) {
        if (!j.at("d").is_array()) throw PayloadError("d must be an array");
        std::vector<int> d;
        for (const auto& x : j.at("d")) d.push_back(as_int(x, "d"));
        s.d = d;
    }
    return s;
}

LabeledQuiver quiver_from_json(const json& j) {
    std::string name;
    if (j.is_string()) {
        name = j.get<std::string>();
        if (!name.empty() && name[0] == '@') name.erase(0, 1);
    } else if (j.is_object() && j.contains("catalog")) {
        if (!j.at("catalog").is_string()) throw PayloadError("catalog must be a name");
        name = j.at("catalog").get<std::string>();
    }
    if (!name.empty()) {
        try {
            const auto& e = catalog_entry(name);
            return {e.quiver, e.labels};
        } catch (const Error&) {
            throw PayloadError("unknown catalog quiver '" + name + "'");
        }
    }
    auto q = ValuedQuiver::build(spec_from_json(j));
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        const auto& l = j.at("labels");
        if (!l.is_array() || l.size() != static_cast<std::size_t>(q.size()))
            throw PayloadError("labels must list one name per vertex");
        for (const auto& x : l) {
            if (!x.is_string()) throw PayloadError("labels must be strings");
            labels.push_back(x.get<std::string>());
        }
    }
    return {q, labels_or_default(q, labels)};
}

json quiver_to_json(const ValuedQuiver& q, const std::vector<std::string>& labels) {
    json edges = json::array();
    for (const auto& e : q.edges(true))
        edges.push_back({{"from", e.from + 1}, {"to", e.to + 1}, {"v", {e.v.forward, e.v.backward}}});
    json out{{"n", q.rank()}, {"m", q.frozen_count()}, {"edges", edges}, {"d", q.symmetrizer()}};
    out["labels"] = labels_or_default(q, labels);
    return out;
}

json poly_to_json(const LaurentPoly& p) {
    json terms = json::array();
    for (const auto& t : p.terms()) {
        std::vector<int> exps(t.exps.exponents().begin(), t.exps.exponents().end());
        terms.push_back({t.coef.get_str(), exps});
    }
    return terms;
}

LaurentPoly poly_from_json(const json& j, VarLayout layout) {
    if (!j.is_array()) throw PayloadError("polynomial must be an array of terms");
    std::vector<Term> terms;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_array())
            throw PayloadError("term must be [coefficient string, exponents]");
        Term term;
        if (term.coef.set_str(t[0].get<std::string>(), 10) != 0) throw PayloadError("bad coefficient");
        if (t[1].size() != static_cast<std::size_t>(layout.size())) throw PayloadError("exponent vector has wrong length");
        Monomial::Storage e;
        for (const auto& x : t[1]) e.push_back(as_int(x, "exponent"));
        term.exps = Monomial(e);
        terms.push_back(std::move(term));
    }
    auto p = LaurentPoly::from_terms(layout, std::move(terms));
    if (p.is_zero()) throw PayloadError("cluster entry is zero");
    return p;
}

json seed_to_json(const Seed& s, const std::vector<std::string>& labels) {
    json cluster = json::array(), laurent = json::array(), exact = json::array(), frozen = json::array();
    for (const auto& x : s.cluster) {
        cluster.push_back(to_fraction_string(x));
        laurent.push_back(to_string(x));
        exact.push_back(poly_to_json(x));
    }
    for (const auto& f : s.frozen) frozen.push_back(to_string(f));
    return {{"quiver", quiver_to_json(s.quiver, labels)},
            {"cluster", cluster},
            {"laurent", laurent},
            {"frozen", frozen},
            {"exact", exact}};
}

Seed seed_from_json(const json& j, std::vector<std::string>* labels) {
    auto lq = quiver_from_json(field(j, "quiver"));
    if (labels) *labels = lq.labels;
    auto s = initial_seed(lq.quiver);
    if (!j.contains("exact")) return s;
    const auto& exact = j.at("exact");
    if (!exact.is_array() || exact.size() != s.cluster.size())
        throw PayloadError("exact must hold one entry per exchangeable vertex");
    for (std::size_t i = 0; i < s.cluster.size(); ++i) {
        s.cluster[i] = poly_from_json(exact[i], s.layout());
        try {
            check_laurent(s.cluster[i]);
        } catch (const LaurentViolation& e) {
            throw ValidationError({std::string("LaurentViolation: ") + e.what()});
        }
    }
    return s;
}

json word_to_json(const MutationWord& w) {
    json out = json::array();
    for (int x : w.letters) out.push_back(x + 1);
    return out;
}

MutationWord word_from_json(const json& j, int rank) {
    if (!j.is_array()) throw PayloadError("word must be an array of vertices");
    MutationWord w;
    for (const auto& x : j) {
        int v = as_int(x, "word letter");
        if (v < 1 || v > rank)
            throw ValidationError({"VertexOutOfRange: " + std::to_string(v) + " is not an exchangeable vertex"});
        w.letters.push_back(v - 1);
    }
    return w;
}

json class_report_to_json(const ClassReport& r, const std::vector<std::string>& labels) {
    json members = json::array();
    for (const auto& m : r.members) {
        std::vector<std::string> l(labels.begin(), labels.begin() + std::min<std::size_t>(labels.size(), static_cast<std::size_t>(m.quiver.size())));
        members.push_back({{"quiver", quiver_to_json(m.quiver, l)}, {"word", word_to_json(m.word)}});
    }
    json out{{"status", to_string(r.status)},
             {"truncated", r.status == ClassStatus::BudgetExceeded},
             {"member_count", r.members.size()},
             {"members", members},
             {"class_weight", r.class_weight >= 0 ? json(r.class_weight) : json(nullptr)}};
    if (r.status == ClassStatus::InfiniteWitness) {
        out["witness_word"] = word_to_json(r.witness_word);
        const auto& e = r.witness_edge;
        out["witness_edge"] = {{"from", e.from + 1}, {"to", e.to + 1}, {"v", {e.v.forward, e.v.backward}}};
    }
    if (!r.analyses.empty()) {
        json a = json::array();
        for (const auto& f : r.analyses) {
            json rigid = json::array();
            for (int v : f.rigid_vertices) rigid.push_back(v + 1);
            a.push_back({{"rigid_vertices", rigid},
                         {"vv_symmetric", f.vv_symmetric},
                         {"simply_laced", f.simply_laced},
                         {"zigzag", f.zigzag}});
        }
        out["analyses"] = a;
    }
    return out;
}

}  // namespace clusterq
