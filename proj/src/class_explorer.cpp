#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "clusterq/catalog.hpp"
#include "clusterq/error.hpp"
#include "clusterq/explorer.hpp"

namespace clusterq {

namespace {

MutationWord prepend(int k, const MutationWord& w) {
    MutationWord out;
    out.letters.reserve(w.size() + 1);
    out.letters.push_back(k);
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
    return out;
}

bool is_path_graph(const ValuedQuiver& q) {
    int edges = 0;
    for (int i = 0; i < q.rank(); ++i) {
        auto nb = neighbors(q, i);
        if (nb.size() > 2) return false;
        edges += static_cast<int>(nb.size());
    }
    return edges / 2 == q.rank() - 1;
}

// Every component of q is mutation equivalent to an orientation of a path.
bool is_a_type(const ValuedQuiver& q) {
    for (const auto& comp : exchangeable_components(q)) {
        auto sub = induced_subquiver(q, comp);
        if (sub.rank() <= 1) continue;
        if (!is_simply_laced(sub)) return false;
        auto r = explore_class(sub);
        if (r.status != ClassStatus::Finite) return false;
        bool path = std::any_of(r.members.begin(), r.members.end(),
                                [](const ClassMember& m) { return is_path_graph(m.quiver); });
        if (!path) return false;
    }
    return true;
}

}  // namespace

std::string to_string(Tri t) {
    switch (t) {
        case Tri::Yes: return "yes";
        case Tri::No: return "no";
        default: return "unknown";
    }
}

std::string to_string(ClassStatus s) {
    switch (s) {
        case ClassStatus::Finite: return "finite";
        case ClassStatus::InfiniteWitness: return "infinite";
        default: return "budget_exceeded";
    }
}

ClassReport explore_class(const ValuedQuiver& q, const ClassBudget& budget) {
    ClassReport report;
    auto root = exchangeable_part(q);
    if (auto heavy = certifying_heavy_edges(root); !heavy.empty()) {
        report.status = ClassStatus::InfiniteWitness;
        report.witness_edge = heavy.front();
        report.members.push_back({root, {}, canonical_form(root, false, budget.rank_limit)});
        return report;
    }
    std::unordered_set<std::string> seen;
    auto key = canonical_form(root, false, budget.rank_limit);
    seen.insert(key);
    report.members.push_back({root, {}, std::move(key)});

    for (std::size_t at = 0; at < report.members.size(); ++at) {
        for (int k = 0; k < root.rank(); ++k) {
            auto child = mutate(report.members[at].quiver, k);
            if (auto heavy = certifying_heavy_edges(child); !heavy.empty()) {
                report.status = ClassStatus::InfiniteWitness;
                report.witness_word = prepend(k, report.members[at].word);
                report.witness_edge = heavy.front();
                return report;
            }
            auto ck = canonical_form(child, false, budget.rank_limit);
            if (seen.count(ck)) continue;
            bool too_deep = budget.max_depth >= 0 && static_cast<int>(report.members[at].word.size()) >= budget.max_depth;
            if (static_cast<int>(report.members.size()) >= budget.max_members || too_deep) {
                report.status = ClassStatus::BudgetExceeded;
                return report;
            }
            seen.insert(ck);
            report.members.push_back({std::move(child), prepend(k, report.members[at].word), std::move(ck)});
        }
    }
    report.status = ClassStatus::Finite;
    report.class_weight = 0;
    for (const auto& m : report.members) report.class_weight = std::max(report.class_weight, weight(m.quiver));
    return report;
}

void analyze_members(ClassReport& report) {
    report.analyses.clear();
    for (const auto& m : report.members) {
        MemberFlags f;
        for (const auto& r : detect_rigid_vertices(m.quiver)) f.rigid_vertices.push_back(r.vertex);
        std::sort(f.rigid_vertices.begin(), f.rigid_vertices.end());
        f.rigid_vertices.erase(std::unique(f.rigid_vertices.begin(), f.rigid_vertices.end()), f.rigid_vertices.end());
        f.vv_symmetric = is_vv_sigma_symmetric(m.quiver).symmetric;
        f.simply_laced = is_simply_laced(m.quiver);
        f.zigzag = is_zigzag(m.quiver);
        report.analyses.push_back(std::move(f));
    }
}

FiniteTypeResult is_finite_mutation_type(const ValuedQuiver& q, const ClassBudget& budget) {
    auto r = explore_class(q, budget);
    FiniteTypeResult out;
    if (r.status == ClassStatus::Finite) {
        out.verdict = Tri::Yes;
    } else if (r.status == ClassStatus::InfiniteWitness) {
        out.verdict = Tri::No;
        out.witness = r.witness_word;
        out.edge = r.witness_edge;
    }
    return out;
}

std::vector<std::array<int, 3>> detect_unbounded_3cycles(const ValuedQuiver& q) {
    std::vector<std::array<int, 3>> out;
    for (auto t : oriented_3cycles(q)) {
        auto q0 = induced_subquiver(q, {t[0], t[1], t[2]});
        // one growing pair suffices; with every pair required nothing in the
        // simply-laced infinite examples ever qualifies
        bool grows = false;
        try {
            for (int y = 0; y < 3 && !grows; ++y) {
                auto qy = mutate(q0, y);
                for (int x = 0; x < 3 && !grows; ++x)
                    if (x != y && weight(mutate(qy, x)) > weight(qy)) grows = true;
            }
        } catch (const LimitExceeded&) {
            // entries past int range: the triangle is growing without bound
            grows = true;
        }
        if (grows) out.push_back(t);
    }
    return out;
}

SearchHit is_pre_unbounded(const ValuedQuiver& q, int depth, int max_nodes) {
    struct Node {
        ValuedQuiver quiver;
        MutationWord word;
    };
    SearchHit hit;
    auto root = exchangeable_part(q);
    std::deque<Node> queue{{root, {}}};
    std::unordered_set<std::string> seen{canonical_form(root, false, std::max(kDefaultSymmetryRankLimit, root.rank()))};
    while (!queue.empty()) {
        Node nd = std::move(queue.front());
        queue.pop_front();
        if (auto t = detect_unbounded_3cycles(nd.quiver); !t.empty()) {
            hit.found = true;
            hit.word = nd.word;
            hit.detail.assign(t.front().begin(), t.front().end());
            return hit;
        }
        if (static_cast<int>(nd.word.size()) >= depth) continue;
        for (int k = 0; k < root.rank(); ++k) {
            try {
                auto child = mutate(nd.quiver, k);
                auto key = canonical_form(child, false, std::max(kDefaultSymmetryRankLimit, root.rank()));
                if (!seen.insert(key).second || static_cast<int>(seen.size()) > max_nodes) continue;
                queue.push_back({std::move(child), prepend(k, nd.word)});
            } catch (const LimitExceeded&) {
            }
        }
    }
    return hit;
}

IsoscelesScan has_non_isosceles_3cycle_in_class(const ValuedQuiver& q, int max_members) {
    IsoscelesScan out;
    auto root = exchangeable_part(q);
    int limit = std::max(kDefaultSymmetryRankLimit, root.rank());
    std::vector<ClassMember> members{{root, {}, canonical_form(root, false, limit)}};
    std::unordered_set<std::string> seen{members[0].key};
    bool complete = true;
    for (std::size_t at = 0; at < members.size(); ++at) {
        for (auto t : oriented_3cycles(members[at].quiver)) {
            if (!is_isosceles_3cycle(members[at].quiver, t[0], t[1], t[2])) {
                out.verdict = Tri::Yes;
                out.word = members[at].word;
                out.triple = t;
                return out;
            }
        }
        for (int k = 0; k < root.rank(); ++k) {
            try {
                auto child = mutate(members[at].quiver, k);
                auto key = canonical_form(child, false, limit);
                if (seen.count(key)) continue;
                if (static_cast<int>(members.size()) >= max_members) {
                    complete = false;
                    continue;
                }
                seen.insert(key);
                members.push_back({std::move(child), prepend(k, members[at].word), std::move(key)});
            } catch (const LimitExceeded&) {
                complete = false;
            }
        }
    }
    out.verdict = complete ? Tri::No : Tri::Unknown;
    return out;
}

WeightClassification weight_classify(const ClassReport& report) {
    if (report.status != ClassStatus::Finite) throw Error("weight classification needs a finite class");
    WeightClassification out;
    out.weight = report.class_weight;
    const auto& members = report.members;

    if (out.weight <= 1) {
        out.witness_found = true;
        out.witness_member = 0;
        out.witness = "simply-laced";
        return out;
    }
    if (out.weight == 2) {
        for (std::size_t m = 0; m < members.size() && !out.witness_found; ++m) {
            const auto& q = members[m].quiver;
            std::vector<Edge> heavy;
            for (const auto& e : q.edges())
                if (e.v.weight() == 2) heavy.push_back(e);
            if (heavy.size() != 1) continue;
            if (q.rank() == 2) {
                out.witness_found = true;
            } else {
                std::vector<int> rest;
                for (int v = 0; v < q.rank(); ++v)
                    if (v != heavy[0].from && v != heavy[0].to) rest.push_back(v);
                out.witness_found = is_a_type(induced_subquiver(q, rest));
            }
            if (out.witness_found) {
                out.witness_member = static_cast<int>(m);
                out.witness = "single weight-2 edge " + std::to_string(heavy[0].from + 1) + "->" +
                              std::to_string(heavy[0].to + 1);
            }
        }
        return out;
    }
    if (out.weight == 3) {
        for (std::size_t m = 0; m < members.size() && !out.witness_found; ++m)
            for (const auto& e : members[m].quiver.edges())
                if (e.v.weight() == 3) {
                    out.witness_found = true;
                    out.witness_member = static_cast<int>(m);
                    out.witness = "edge " + std::to_string(e.from + 1) + "->" + std::to_string(e.to + 1) + " valued (" +
                                  std::to_string(e.v.forward) + "," + std::to_string(e.v.backward) + ")";
                    break;
                }
        return out;
    }

    // weight 4: heads are the leading quivers and the (2,2) triangle
    std::vector<std::string> heads;
    for (const auto& name : catalog_names())
        if (name.rfind("leading_q_", 0) == 0) heads.push_back(name);
    heads.push_back("markov_222");
    for (std::size_t m = 0; m < members.size(); ++m) {
        const auto& q = members[m].quiver;
        if (weight(q) != 4) continue;
        std::set<std::pair<int, int>> covered;
        std::set<std::vector<int>> reported;
        for (const auto& h : heads) {
            const auto& hq = catalog_quiver(h);
            if (hq.rank() > q.rank()) continue;
            for (const auto& match : find_induced_matches(hq, q, true)) {
                std::vector<int> verts = match.map;
                std::sort(verts.begin(), verts.end());
                if (!reported.insert(verts).second) continue;
                HeadMatch hm;
                hm.member = static_cast<int>(m);
                hm.head = h;
                hm.vertices = match.map;
                hm.sign = match.sign;
                for (int v : verts)
                    for (int u : neighbors(q, v))
                        if (!std::binary_search(verts.begin(), verts.end(), u)) hm.tails.emplace_back(v, u);
                for (int a : verts)
                    for (int b : verts) covered.insert({a, b});
                out.heads.push_back(std::move(hm));
            }
        }
        bool classified = true;
        for (const auto& e : q.edges())
            if (e.v.weight() == 4 && !covered.count({e.from, e.to})) classified = false;
        if (!classified) out.unclassified_members.push_back(static_cast<int>(m));
    }
    out.witness_found = !out.heads.empty();
    if (out.witness_found) {
        out.witness_member = out.heads.front().member;
        out.witness = "head " + out.heads.front().head;
    }
    return out;
}

std::optional<SubalgebraDecomposition> check_subalgebra_decomposition(const ValuedQuiver& q,
                                                                      const ClassBudget& budget) {
    const int n = q.rank();
    if (n > kDefaultSymmetryRankLimit) throw LimitExceeded("decomposition search limited to rank 12");
    std::unordered_map<std::string, Tri> symmetric_cache;
    std::unordered_map<std::string, std::string> kind_cache;
    auto symmetric = [&](const ValuedQuiver& sub) {
        auto key = canonical_form(sub, false, budget.rank_limit);
        auto it = symmetric_cache.find(key);
        if (it != symmetric_cache.end()) return it->second;
        return symmetric_cache[key] = is_symmetric_algebra(sub, budget).verdict;
    };
    // "infinite", "rigid", or "" for a finite rigid-free (or unknown) part
    auto bad_kind = [&](const ValuedQuiver& sub) -> std::string {
        std::string worst;
        for (const auto& comp : exchangeable_components(sub)) {
            auto part = induced_subquiver(sub, comp);
            auto v = is_symmetric_algebra(part, budget);
            if (v.verdict != Tri::No) continue;
            if (v.reason == "infinite") return "infinite";
            worst = v.reason;
        }
        return worst;
    };

    std::vector<int> order(static_cast<std::size_t>(1) << n);
    for (std::size_t s = 0; s < order.size(); ++s) order[s] = static_cast<int>(s);
    std::stable_sort(order.begin(), order.end(),
                     [](int a, int b) { return __builtin_popcount(a) > __builtin_popcount(b); });
    for (int mask : order) {
        if (mask == 0) continue;
        std::vector<int> part, rest;
        for (int v = 0; v < n; ++v) (mask >> v & 1 ? part : rest).push_back(v);
        auto sub = induced_subquiver(q, part);
        if (!is_exchangeable_connected(sub)) continue;
        std::string kind = "trivial";
        if (!rest.empty()) {
            kind = bad_kind(induced_subquiver(q, rest));
            if (kind.empty()) continue;
        }
        if (symmetric(sub) != Tri::Yes) continue;

        SubalgebraDecomposition out;
        out.part = part;
        out.complement = rest;
        out.complement_kind = kind;
        // glue along the vertices adjacent to both sides
        std::vector<char> in_part(static_cast<std::size_t>(q.size()), 0);
        for (int v : part) in_part[static_cast<std::size_t>(v)] = 1;
        std::set<int> first(part.begin(), part.end()), second(rest.begin(), rest.end());
        for (int v = 0; v < q.size(); ++v) {
            for (int u : neighbors(q, v, true)) {
                if (v < n && in_part[static_cast<std::size_t>(v)] && u < n && !in_part[static_cast<std::size_t>(u)])
                    first.insert(u);
            }
            if (v >= n) {
                bool touches_part = false, touches_rest = false;
                for (int u : neighbors(q, v, true))
                    (u < n && in_part[static_cast<std::size_t>(u)] ? touches_part : touches_rest) = true;
                if (touches_part) first.insert(v);
                if (touches_rest || !touches_part) second.insert(v);
            }
        }
        out.gluing.first.assign(first.begin(), first.end());
        out.gluing.second.assign(second.begin(), second.end());
        std::set_intersection(first.begin(), first.end(), second.begin(), second.end(),
                              std::back_inserter(out.gluing.overlap));
        return out;
    }
    return std::nullopt;
}

}  // namespace clusterq
