#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include <boost/container_hash/hash.hpp>

#include "clusterq/error.hpp"
#include "clusterq/explorer.hpp"

namespace clusterq {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const { return boost::hash_range(v.begin(), v.end()); }
};

SymmetryOptions options_for(const ValuedQuiver& q, bool allow_sign) {
    SymmetryOptions o;
    o.allow_sign = allow_sign;
    o.rank_limit = std::max(kDefaultSymmetryRankLimit, q.rank());
    return o;
}

MutationWord prepend(const std::vector<int>& letters, const MutationWord& w) {
    MutationWord out{letters};
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
    return out;
}

}  // namespace

VvResult is_vv_sigma_symmetric(const ValuedQuiver& q) {
    auto p = exchangeable_part(q);
    auto opts = options_for(p, true);
    VvResult out;
    for (int i = 0; i < p.rank(); ++i) {
        auto mi = mutate(p, i);
        bool done = false;
        if (auto m = find_symmetry(p, mi, opts)) {
            out.certificates.push_back({i, -1, m->sigma, m->sign});
            done = true;
        }
        for (int j = 0; j < p.rank() && !done; ++j) {
            if (j == i) continue;
            if (auto m = find_symmetry(p, mutate(mi, j), opts)) {
                out.certificates.push_back({i, j, m->sigma, m->sign});
                done = true;
            }
        }
        if (!done) {
            out.failing_vertex = i;
            return out;
        }
    }
    out.symmetric = true;
    return out;
}

std::vector<SymmetrySequence> find_symmetric_sequences(const ValuedQuiver& q, int max_len, int max_words) {
    std::vector<SymmetrySequence> out;
    auto opts = options_for(q, false);
    int visited = 0;
    std::vector<int> applied;  // application order
    auto rec = [&](auto&& self, const ValuedQuiver& cur) -> void {
        if (++visited > max_words) return;
        if (auto m = find_symmetry(q, cur, opts)) {
            SymmetrySequence s;
            s.word = MutationWord::from_application_order(applied);
            s.sigma = m->sigma;
            s.sign = 1;
            out.push_back(std::move(s));
        }
        if (static_cast<int>(applied.size()) >= max_len) return;
        for (int k = 0; k < q.rank(); ++k) {
            if (!applied.empty() && applied.back() == k) continue;
            applied.push_back(k);
            self(self, mutate(cur, k));
            applied.pop_back();
        }
    };
    rec(rec, q);
    std::stable_sort(out.begin(), out.end(),
                     [](const SymmetrySequence& a, const SymmetrySequence& b) { return a.word.size() < b.word.size(); });
    return out;
}

std::vector<int> symmetric_members(const ClassReport& report, const ValuedQuiver& q) {
    auto key = canonical_form(exchangeable_part(q), false, std::max(kDefaultSymmetryRankLimit, q.rank()));
    std::vector<int> out;
    for (std::size_t i = 0; i < report.members.size(); ++i)
        if (report.members[i].key == key) out.push_back(static_cast<int>(i));
    return out;
}

SymmetricVariables symmetric_cluster_variables(const ValuedQuiver& q, const SeedBudget& budget, bool allow_sign) {
    auto pat = explore_seeds(q, budget);
    int limit = std::max(kDefaultSymmetryRankLimit, q.rank());
    auto root_key = canonical_form(q, allow_sign, limit);
    std::unordered_map<std::vector<int>, bool, VecHash> cache;

    SymmetricVariables out;
    out.status = pat.status;
    out.seeds = static_cast<int>(pat.nodes.size());
    std::vector<char> used(pat.variables.size(), 0), sym(pat.variables.size(), 0);
    for (const auto& nd : pat.nodes) {
        for (int id : nd.cluster) used[static_cast<std::size_t>(id)] = 1;
        auto [it, fresh] = cache.try_emplace(nd.quiver.matrix(), false);
        if (fresh) it->second = canonical_form(nd.quiver, allow_sign, limit) == root_key;
        if (!it->second) continue;
        ++out.symmetric_seeds;
        for (int id : nd.cluster) sym[static_cast<std::size_t>(id)] = 1;
    }
    for (std::size_t i = 0; i < pat.variables.size(); ++i) {
        if (used[i]) out.all.push_back(pat.variables[i]);
        if (sym[i]) out.symmetric.push_back(pat.variables[i]);
    }
    if (pat.status == ClosureStatus::Complete) out.equal = out.symmetric.size() == out.all.size() ? Tri::Yes : Tri::No;
    return out;
}

SymmetricAlgebraVerdict is_symmetric_algebra(const ValuedQuiver& q, const ClassBudget& budget, bool initial_only) {
    SymmetricAlgebraVerdict out;
    auto report = explore_class(q, budget);
    if (report.status == ClassStatus::InfiniteWitness) {
        out.verdict = Tri::No;
        out.reason = "infinite";
        out.witness = report.witness_word;
        out.edge = report.witness_edge;
        return out;
    }
    if (report.status == ClassStatus::BudgetExceeded) {
        out.reason = "budget";
        return out;
    }
    std::size_t scan = initial_only ? 1 : report.members.size();
    for (std::size_t m = 0; m < scan; ++m) {
        auto rigid = detect_rigid_vertices(report.members[m].quiver);
        if (rigid.empty()) continue;
        out.verdict = Tri::No;
        out.reason = "rigid";
        out.rigid = rigid.front();
        out.member = static_cast<int>(m);
        out.witness = report.members[m].word;
        return out;
    }
    out.verdict = Tri::Yes;
    return out;
}

std::optional<MutationWord> realize_permutation(const ValuedQuiver& q, const Permutation& tau, int max_nodes) {
    auto target = apply_permutation(tau, q);
    if (same_up_to_frozen_pairs(q, target)) return MutationWord{};
    struct Node {
        ValuedQuiver quiver;
        MutationWord word;
    };
    std::deque<Node> queue{{q, {}}};
    std::unordered_set<std::vector<int>, VecHash> seen{q.matrix()};
    while (!queue.empty()) {
        Node nd = std::move(queue.front());
        queue.pop_front();
        for (int k = 0; k < q.rank(); ++k) {
            if (!nd.word.empty() && nd.word.letters.front() == k) continue;
            ValuedQuiver child;
            try {
                child = mutate(nd.quiver, k);
            } catch (const LimitExceeded&) {
                continue;
            }
            auto w = prepend({k}, nd.word);
            if (same_up_to_frozen_pairs(child, target)) return w;
            if (static_cast<int>(seen.size()) >= max_nodes || !seen.insert(child.matrix()).second) continue;
            queue.push_back({std::move(child), std::move(w)});
        }
    }
    return std::nullopt;
}

FullGroupResult has_full_symmetric_group(const ValuedQuiver& q, const ClassBudget& budget, int verify_max_rank,
                                         int max_nodes) {
    if (q.rank() <= 2) throw ValidationError({"BadSize: the symmetric group test needs rank at least 3"});
    FullGroupResult out;
    auto fin = is_finite_mutation_type(q, budget);
    if (is_simply_laced(q) && fin.verdict == Tri::Yes)
        out.verdict = Tri::Yes;
    else if (q.rank() == 3 && fin.verdict == Tri::Yes && is_vv_sigma_symmetric(q).symmetric)
        out.verdict = Tri::Yes;
    else if (fin.verdict == Tri::Unknown && is_simply_laced(q))
        out.verdict = Tri::Unknown;
    else
        out.verdict = Tri::No;

    if (out.verdict == Tri::Yes && q.rank() <= verify_max_rank) {
        out.verified = true;
        for (int i = 0; i + 1 < q.rank(); ++i) {
            auto w = realize_permutation(q, Permutation::transposition(q.rank(), i, i + 1), max_nodes);
            out.verified = out.verified && w.has_value();
            out.transpositions.push_back(std::move(w));
        }
    }
    return out;
}

BlockingResult is_blocking_edge(const ValuedQuiver& q, int i, int j, int max_nodes) {
    if (!q.is_exchangeable(i) || !q.is_exchangeable(j) || i == j)
        throw ValidationError({"NotExchangeable: blocking edges join two distinct exchangeable vertices"});
    if (q.b(i, j) == 0) throw ValidationError({"NoEdge: vertices " + std::to_string(i + 1) + " and " +
                                               std::to_string(j + 1) + " are not adjacent"});
    BlockingResult out;
    if (auto w = realize_permutation(q, Permutation::transposition(q.rank(), i, j), max_nodes)) {
        out.realizable = true;
        out.word = std::move(*w);
    }
    return out;
}

Avenue has_simply_laced_avenue(const ValuedQuiver& q, int i, int pre_unbounded_depth) {
    auto p = exchangeable_part(q);
    if (!p.is_exchangeable(i)) throw ValidationError({"NotExchangeable: vertex " + std::to_string(i + 1)});
    Avenue out;
    auto nb = neighbors(p, i);
    for (int u : nb)
        if (p.edge_weight(i, u) != 1) return out;

    // no neighbor sits in a pre-unbounded piece of Q minus i
    std::vector<int> others;
    for (int v = 0; v < p.rank(); ++v)
        if (v != i) others.push_back(v);
    auto rest = induced_subquiver(p, others);
    for (const auto& comp : exchangeable_components(rest)) {
        bool attached = std::any_of(comp.begin(), comp.end(), [&](int c) {
            return std::find(nb.begin(), nb.end(), others[static_cast<std::size_t>(c)]) != nb.end();
        });
        if (!attached || comp.size() < 3) continue;
        if (is_pre_unbounded(induced_subquiver(rest, comp), pre_unbounded_depth).found) return out;
    }

    // distances to the nearest endpoint of a non-simply-laced edge
    constexpr int kFar = std::numeric_limits<int>::max();
    std::vector<int> dist(static_cast<std::size_t>(p.rank()), kFar), next(static_cast<std::size_t>(p.rank()), -1);
    std::deque<int> bfs;
    for (const auto& e : p.edges())
        if (e.v.weight() != 1)
            for (int v : {e.from, e.to})
                if (dist[static_cast<std::size_t>(v)] != 0) {
                    dist[static_cast<std::size_t>(v)] = 0;
                    bfs.push_back(v);
                }
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop_front();
        for (int u : neighbors(p, v))
            if (dist[static_cast<std::size_t>(u)] == kFar) {
                dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                next[static_cast<std::size_t>(u)] = v;
                bfs.push_back(u);
            }
    }
    for (int k : nb) {
        if (dist[static_cast<std::size_t>(k)] < 2) continue;
        out.exists = true;
        out.path = {i, k};
        if (dist[static_cast<std::size_t>(k)] != kFar)
            for (int v = next[static_cast<std::size_t>(k)]; v >= 0; v = next[static_cast<std::size_t>(v)])
                out.path.push_back(v);
        return out;
    }
    return out;
}

MutationWord avenue_word(int i, int k) { return MutationWord{{k, i, k, i, k, i, i}}; }

std::optional<CounterSequence> find_counter_sequence(const ValuedQuiver& q0, const ValuedQuiver& member, int i,
                                                     int max_len, int min_len, int max_nodes) {
    auto target = exchangeable_part(q0);
    auto start = mutate(exchangeable_part(member), i);
    auto opts = options_for(target, true);
    auto check = [&](const ValuedQuiver& cur, const MutationWord& w) -> std::optional<CounterSequence> {
        if (static_cast<int>(w.size()) < min_len) return std::nullopt;
        if (auto m = find_symmetry(target, cur, opts)) return CounterSequence{w, m->sigma, m->sign};
        return std::nullopt;
    };

    // the avenue construction first
    for (int k : neighbors(start, i)) {
        MutationWord w{{k, i, k, i, k, i}};
        if (static_cast<int>(w.size()) > max_len) break;
        if (auto hit = check(apply_word(start, w), w)) return hit;
    }

    struct State {
        ValuedQuiver quiver;
        MutationWord word;
    };
    // buckets by word length: single letters cost 1, pentagon blocks 5
    std::vector<std::vector<State>> buckets(static_cast<std::size_t>(max_len) + 1);
    buckets[0].push_back({start, {}});
    std::unordered_set<std::vector<int>, VecHash> seen{start.matrix()};
    for (int len = 0; len <= max_len; ++len) {
        for (std::size_t s = 0; s < buckets[static_cast<std::size_t>(len)].size(); ++s) {
            State st = buckets[static_cast<std::size_t>(len)][s];
            if (auto hit = check(st.quiver, st.word)) return hit;
            auto push = [&](std::vector<int> letters) {
                // the first letter applied must not cancel the last one
                if (!st.word.empty() && st.word.letters.front() == letters.back()) return;
                int nl = len + static_cast<int>(letters.size());
                if (nl > max_len) return;
                ValuedQuiver next;
                try {
                    next = apply_word(st.quiver, MutationWord{letters});
                } catch (const LimitExceeded&) {
                    return;
                }
                // matches at or beyond min_len are what we want to keep reachable
                if (nl >= min_len && static_cast<int>(seen.size()) >= max_nodes) return;
                if (!seen.insert(next.matrix()).second && nl >= min_len) return;
                buckets[static_cast<std::size_t>(nl)].push_back({std::move(next), prepend(letters, st.word)});
            };
            for (int j = 0; j < start.rank(); ++j) {
                if (j == i) continue;
                push({j});
                if (st.quiver.b(i, j) != 0) {
                    push({i, j, i, j, i});
                    push({j, i, j, i, j});
                }
            }
        }
        buckets[static_cast<std::size_t>(len)].clear();
    }
    return std::nullopt;
}

}  // namespace clusterq
