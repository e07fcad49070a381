#pragma once

#include <numeric>
#include <random>

#include "clusterq/quiver.hpp"

namespace clusterq::testing {

/// Random valid quiver: a random symmetrizer, a random spanning tree on the
/// exchangeable vertices plus extra arrows, valuations forced by d.
inline ValuedQuiver random_quiver(std::mt19937& rng, int n, int m, double density = 0.4, int max_d = 3,
                                  int max_scale = 2) {
    std::uniform_int_distribution<int> dd(1, max_d), sc(1, max_scale), coin(0, 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<int> d(static_cast<std::size_t>(n + m));
    for (auto& x : d) x = dd(rng);
    QuiverSpec s;
    s.n = n;
    s.m = m;
    auto add = [&](int i, int j) {
        if (coin(rng)) std::swap(i, j);
        int g = std::gcd(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(j)]);
        int t = sc(rng);
        // d_i v_ij = v_ji d_j
        s.edges.push_back({i, j, {t * d[static_cast<std::size_t>(j)] / g, t * d[static_cast<std::size_t>(i)] / g}});
    };
    std::vector<std::vector<char>> has(static_cast<std::size_t>(n + m), std::vector<char>(static_cast<std::size_t>(n + m), 0));
    for (int v = 1; v < n; ++v) {
        int w = std::uniform_int_distribution<int>(0, v - 1)(rng);
        add(v, w);
        has[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] = has[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)] = 1;
    }
    for (int i = 0; i < n + m; ++i)
        for (int j = i + 1; j < n + m; ++j) {
            if (has[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] || (i >= n && j >= n)) continue;
            if (u(rng) < density) add(i, j);
        }
    s.d = std::vector<int>(d.begin(), d.begin() + n);
    return ValuedQuiver::build(s);
}

inline Permutation random_permutation(std::mt19937& rng, int n) {
    auto p = Permutation::identity(n);
    std::shuffle(p.image.begin(), p.image.end(), rng);
    return p;
}

inline QuiverSpec spec_of(int n, int m, std::vector<Edge> edges, std::optional<std::vector<int>> d = std::nullopt) {
    QuiverSpec s;
    s.n = n;
    s.m = m;
    s.edges = std::move(edges);
    s.d = std::move(d);
    return s;
}

inline ValuedQuiver make(int n, int m, std::vector<Edge> edges, std::optional<std::vector<int>> d = std::nullopt) {
    return ValuedQuiver::build(spec_of(n, m, std::move(edges), std::move(d)));
}

}  // namespace clusterq::testing
