#include <algorithm>
#include <set>

#include "clusterq/catalog.hpp"
#include "clusterq/explorer.hpp"

namespace clusterq {

namespace {

// Pattern vertices in an order where each one (after the first of its
// component) is adjacent to an earlier one, so backtracking prunes early.
std::vector<int> attach_order(const ValuedQuiver& p) {
    std::vector<int> order;
    std::vector<char> used(static_cast<std::size_t>(p.rank()), 0);
    for (int s = 0; s < p.rank(); ++s) {
        if (used[static_cast<std::size_t>(s)]) continue;
        used[static_cast<std::size_t>(s)] = 1;
        std::size_t head = order.size();
        order.push_back(s);
        for (; head < order.size(); ++head)
            for (int u : neighbors(p, order[head]))
                if (!used[static_cast<std::size_t>(u)]) {
                    used[static_cast<std::size_t>(u)] = 1;
                    order.push_back(u);
                }
    }
    return order;
}

}  // namespace

std::vector<PatternMatch> find_induced_matches(const ValuedQuiver& pattern, const ValuedQuiver& q, bool allow_sign) {
    std::vector<PatternMatch> out;
    const int p = pattern.rank(), n = q.rank();
    if (p == 0 || p > n) return out;
    auto order = attach_order(pattern);
    std::vector<int> map(static_cast<std::size_t>(p), -1);
    std::vector<char> taken(static_cast<std::size_t>(n), 0);

    for (int sign : {1, -1}) {
        if (sign < 0 && !allow_sign) break;
        auto rec = [&](auto&& self, std::size_t depth) -> void {
            if (depth == order.size()) {
                out.push_back({map, sign});
                return;
            }
            int a = order[depth];
            for (int v = 0; v < n; ++v) {
                if (taken[static_cast<std::size_t>(v)]) continue;
                bool ok = true;
                for (std::size_t e = 0; e < depth && ok; ++e) {
                    int b = order[e], w = map[static_cast<std::size_t>(b)];
                    ok = q.b(v, w) == sign * pattern.b(a, b) && q.b(w, v) == sign * pattern.b(b, a);
                }
                if (!ok) continue;
                map[static_cast<std::size_t>(a)] = v;
                taken[static_cast<std::size_t>(v)] = 1;
                self(self, depth + 1);
                taken[static_cast<std::size_t>(v)] = 0;
                map[static_cast<std::size_t>(a)] = -1;
            }
        };
        rec(rec, 0);
    }
    return out;
}

std::vector<RigidVertex> detect_rigid_vertices(const ValuedQuiver& q) {
    std::set<std::pair<int, std::string>> found;
    for (const auto& e : catalog()) {
        if (e.name.rfind("rigid_3_2_", 0) != 0) continue;
        for (const auto& m : find_induced_matches(e.quiver, q, true))
            found.insert({m.map[static_cast<std::size_t>(e.marked_vertex)], e.name});
    }
    std::vector<RigidVertex> out;
    for (const auto& [v, name] : found) out.push_back({v, name});
    return out;
}

}  // namespace clusterq
