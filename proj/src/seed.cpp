#include "clusterq/seed.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "clusterq/error.hpp"

namespace clusterq {

namespace {

void require_vertex(const ValuedQuiver& q, int k) {
    if (!q.is_exchangeable(k))
        throw ValidationError({"VertexOutOfRange: mutation vertex " + std::to_string(k + 1) + " is not exchangeable"});
}

// prod_{b_jk > 0} X_j^{b_jk} + prod_{b_jk < 0} X_j^{-b_jk}, with `entry(j)`
// giving X_j for every vertex.
template <class Entry>
LaurentPoly exchange_binomial(const ValuedQuiver& q, int k, Entry entry) {
    VarLayout layout{q.rank(), q.frozen_count()};
    auto pos = LaurentPoly::constant(layout, 1);
    auto neg = LaurentPoly::constant(layout, 1);
    for (int j = 0; j < q.size(); ++j) {
        int b = q.b(j, k);
        if (b == 0) continue;
        auto f = entry(j).pow(static_cast<unsigned>(std::abs(b)));
        if (b > 0)
            pos = pos * f;
        else
            neg = neg * f;
    }
    return pos + neg;
}

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const { return boost::hash_range(v.begin(), v.end()); }
};

}  // namespace

Seed initial_seed(const ValuedQuiver& q) {
    if (!is_exchangeable_connected(q))
        throw ValidationError({"Disconnected: the exchangeable part of a seed quiver must be connected"});
    Seed s;
    s.quiver = q;
    VarLayout layout{q.rank(), q.frozen_count()};
    for (int i = 0; i < q.rank(); ++i) s.cluster.push_back(LaurentPoly::variable(layout, i));
    for (int j = 0; j < q.frozen_count(); ++j) s.frozen.push_back(LaurentPoly::variable(layout, q.rank() + j));
    return s;
}

void check_laurent(const LaurentPoly& p) {
    if (p.is_zero()) throw LaurentViolation("zero cluster variable");
    auto mins = p.min_exponents();
    for (int j = p.layout().exchangeable; j < p.layout().size(); ++j)
        if (mins[static_cast<std::size_t>(j)] < 0)
            throw LaurentViolation("negative frozen exponent in " + to_string(p));
}

Seed mutate_seed(const Seed& s, int k) {
    require_vertex(s.quiver, k);
    const int n = s.quiver.rank();
    auto num = exchange_binomial(s.quiver, k, [&](int j) -> const LaurentPoly& {
        return j < n ? s.cluster[static_cast<std::size_t>(j)] : s.frozen[static_cast<std::size_t>(j - n)];
    });
    Seed out = s;
    auto& x = out.cluster[static_cast<std::size_t>(k)];
    x = lp_div_exact(num, s.cluster[static_cast<std::size_t>(k)]);
    check_laurent(x);
    out.quiver = mutate(s.quiver, k);
    return out;
}

Seed apply_word(const Seed& s, const MutationWord& w) {
    Seed out = s;
    for (int k : w.reduced().application_order()) out = mutate_seed(out, k);
    return out;
}

Seed apply_permutation(const Permutation& sigma, const Seed& s) {
    Seed out = s;
    out.quiver = apply_permutation(sigma, s.quiver);
    for (int i = 0; i < s.quiver.rank(); ++i)
        out.cluster[static_cast<std::size_t>(sigma(i))] = s.cluster[static_cast<std::size_t>(i)];
    return out;
}

std::string to_string(ClosureStatus s) { return s == ClosureStatus::Complete ? "complete" : "truncated"; }

MutationWord SeedPattern::word_to(int node) const {
    MutationWord w;
    for (int v = node; nodes[static_cast<std::size_t>(v)].parent >= 0; v = nodes[static_cast<std::size_t>(v)].parent)
        w.letters.push_back(nodes[static_cast<std::size_t>(v)].label);
    return w;
}

Seed SeedPattern::seed_at(int node) const {
    const auto& nd = nodes[static_cast<std::size_t>(node)];
    Seed s;
    s.quiver = nd.quiver;
    for (int id : nd.cluster) s.cluster.push_back(variables[static_cast<std::size_t>(id)]);
    for (int j = 0; j < layout.frozen; ++j) s.frozen.push_back(LaurentPoly::variable(layout, layout.exchangeable + j));
    return s;
}

SeedPattern explore_seeds(const ValuedQuiver& q, const SeedBudget& budget) {
    auto root = initial_seed(q);
    const int n = q.rank(), size = q.size();

    SeedPattern pat;
    pat.layout = root.layout();
    std::unordered_map<LaurentPoly, int> ids;
    auto intern = [&](LaurentPoly p) {
        auto [it, fresh] = ids.try_emplace(p, static_cast<int>(pat.variables.size()));
        if (fresh) pat.variables.push_back(std::move(p));
        return it->second;
    };

    // Seeds are identified by their sorted cluster and the quiver relabeled
    // into that order.
    std::unordered_map<std::vector<int>, int, VecHash> seen;
    auto seed_key = [&](const std::vector<int>& cluster, const ValuedQuiver& quiver) {
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return cluster[static_cast<std::size_t>(a)] < cluster[static_cast<std::size_t>(b)];
        });
        std::vector<int> key;
        key.reserve(static_cast<std::size_t>(n + size * size));
        for (int i : order) key.push_back(cluster[static_cast<std::size_t>(i)]);
        auto vertex = [&](int r) { return r < n ? order[static_cast<std::size_t>(r)] : r; };
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c)
                if (r < n || c < n) key.push_back(quiver.b(vertex(r), vertex(c)));
        return key;
    };

    // (old id, binomial descriptor) -> new id. The binomial is stored with its
    // two monomials in a fixed order, so the reverse exchange hits the memo.
    std::unordered_map<std::vector<int>, int, VecHash> memo;
    auto descriptor = [&](const PatternNode& nd, int k) {
        std::vector<int> pos, neg;
        for (int j = 0; j < size; ++j) {
            int b = nd.quiver.b(j, k);
            if (b == 0) continue;
            int id = j < n ? nd.cluster[static_cast<std::size_t>(j)] : -1 - (j - n);
            auto& side = b > 0 ? pos : neg;
            side.push_back(id);
            side.push_back(std::abs(b));
        }
        // pairs (id, exponent) sorted by id
        auto sort_pairs = [](std::vector<int>& v) {
            std::vector<std::pair<int, int>> p;
            for (std::size_t i = 0; i < v.size(); i += 2) p.emplace_back(v[i], v[i + 1]);
            std::sort(p.begin(), p.end());
            v.clear();
            for (auto [a, b] : p) {
                v.push_back(a);
                v.push_back(b);
            }
        };
        sort_pairs(pos);
        sort_pairs(neg);
        if (neg < pos) std::swap(pos, neg);
        std::vector<int> d{0, static_cast<int>(pos.size())};
        d.insert(d.end(), pos.begin(), pos.end());
        d.insert(d.end(), neg.begin(), neg.end());
        return d;
    };

    PatternNode first;
    first.quiver = q;
    for (int i = 0; i < n; ++i) first.cluster.push_back(intern(root.cluster[static_cast<std::size_t>(i)]));
    seen.emplace(seed_key(first.cluster, first.quiver), 0);
    pat.nodes.push_back(std::move(first));

    for (std::size_t at = 0; at < pat.nodes.size(); ++at) {
        for (int k = 0; k < n; ++k) {
            const PatternNode& nd = pat.nodes[at];
            if (nd.parent >= 0 && k == nd.label) continue;  // back to the parent
            int old_id = nd.cluster[static_cast<std::size_t>(k)];
            auto desc = descriptor(nd, k);
            desc[0] = old_id;
            int new_id;
            if (auto it = memo.find(desc); it != memo.end()) {
                new_id = it->second;
            } else {
                auto num = exchange_binomial(nd.quiver, k, [&](int j) {
                    return j < n ? pat.variables[static_cast<std::size_t>(nd.cluster[static_cast<std::size_t>(j)])]
                                 : LaurentPoly::variable(pat.layout, j);
                });
                auto x = lp_div_exact(num, pat.variables[static_cast<std::size_t>(old_id)]);
                check_laurent(x);
                ++pat.exchanges;
                new_id = intern(std::move(x));
                memo.emplace(desc, new_id);
                desc[0] = new_id;
                memo.emplace(std::move(desc), old_id);
            }

            PatternNode child;
            child.cluster = pat.nodes[at].cluster;
            child.cluster[static_cast<std::size_t>(k)] = new_id;
            child.quiver = mutate(pat.nodes[at].quiver, k);
            auto key = seed_key(child.cluster, child.quiver);
            if (seen.count(key)) continue;
            if (pat.nodes[at].depth >= budget.max_depth ||
                static_cast<int>(pat.nodes.size()) >= budget.max_seeds) {
                pat.status = ClosureStatus::Truncated;
                continue;
            }
            child.parent = static_cast<int>(at);
            child.label = k;
            child.depth = pat.nodes[at].depth + 1;
            seen.emplace(std::move(key), static_cast<int>(pat.nodes.size()));
            pat.nodes.push_back(std::move(child));
        }
        // Once over budget nothing new can be stored, so stop expanding.
        if (pat.status == ClosureStatus::Truncated && static_cast<int>(pat.nodes.size()) >= budget.max_seeds) break;
    }
    return pat;
}

VariableEnumeration enumerate_cluster_variables(const ValuedQuiver& q, const SeedBudget& budget) {
    auto pat = explore_seeds(q, budget);
    VariableEnumeration out;
    out.status = pat.status;
    out.seeds = static_cast<int>(pat.nodes.size());
    // Variables computed at the frontier but never stored in a seed are dropped.
    std::vector<char> used(pat.variables.size(), 0);
    for (const auto& nd : pat.nodes)
        for (int id : nd.cluster) used[static_cast<std::size_t>(id)] = 1;
    for (std::size_t i = 0; i < pat.variables.size(); ++i)
        if (used[i]) out.variables.push_back(pat.variables[i]);
    return out;
}

}  // namespace clusterq
