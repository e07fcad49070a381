#include "clusterq/quiver.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include <gmpxx.h>

#include "clusterq/error.hpp"

namespace clusterq {

namespace {

int checked_entry(std::int64_t v) {
    if (v > std::numeric_limits<int>::max() || v < std::numeric_limits<int>::min())
        throw LimitExceeded("exchange matrix entry overflows int");
    return static_cast<int>(v);
}

std::string label(int v) { return std::to_string(v + 1); }

bool frozen_pair(int n, int i, int j) { return i >= n && j >= n; }

// Propagates a rational symmetrizer along every arrow that touches an
// exchangeable vertex. `seed` holds known values (0 = unknown). Returns false
// on the first inconsistent arrow and reports it through `bad`.
bool propagate_symmetrizer(int n, int size, const std::vector<Edge>& edges,
                           std::vector<mpq_class>& d, Edge* bad) {
    std::vector<std::vector<std::pair<int, const Edge*>>> adj(static_cast<std::size_t>(size));
    for (const auto& e : edges) {
        if (frozen_pair(n, e.from, e.to)) continue;
        adj[static_cast<std::size_t>(e.from)].push_back({e.to, &e});
        adj[static_cast<std::size_t>(e.to)].push_back({e.from, &e});
    }
    // d_i v_ij = v_ji d_j for the arrow i -> j.
    auto implied = [&](int from_vertex, const Edge& e) {
        if (from_vertex == e.from)
            return mpq_class(d[static_cast<std::size_t>(e.from)] * e.v.forward / e.v.backward);
        return mpq_class(d[static_cast<std::size_t>(e.to)] * e.v.backward / e.v.forward);
    };
    std::vector<char> seen(static_cast<std::size_t>(size), 0);
    auto run_from = [&](int s) {
        std::queue<int> bfs;
        bfs.push(s);
        seen[static_cast<std::size_t>(s)] = 1;
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            for (auto [w, e] : adj[static_cast<std::size_t>(u)]) {
                mpq_class want = implied(u, *e);
                want.canonicalize();
                auto& dw = d[static_cast<std::size_t>(w)];
                if (dw == 0) {
                    dw = want;
                } else if (dw != want) {
                    if (bad) *bad = *e;
                    return false;
                }
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    bfs.push(w);
                }
            }
        }
        return true;
    };
    for (int s = 0; s < size; ++s)
        if (d[static_cast<std::size_t>(s)] != 0 && !seen[static_cast<std::size_t>(s)] && !run_from(s))
            return false;
    for (int s = 0; s < size; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        d[static_cast<std::size_t>(s)] = 1;
        if (!run_from(s)) return false;
    }
    return true;
}

std::vector<std::vector<int>> components_of(int count, const std::vector<int>& b, int stride) {
    std::vector<int> comp(static_cast<std::size_t>(count), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < count; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        std::vector<int> members{s};
        comp[static_cast<std::size_t>(s)] = static_cast<int>(out.size());
        for (std::size_t h = 0; h < members.size(); ++h) {
            int u = members[h];
            for (int w = 0; w < count; ++w) {
                if (comp[static_cast<std::size_t>(w)] < 0 && b[static_cast<std::size_t>(u * stride + w)] != 0) {
                    comp[static_cast<std::size_t>(w)] = comp[static_cast<std::size_t>(s)];
                    members.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

// Minimal positive integers proportional to `vals` (all positive rationals).
std::vector<int> integral_scaling(const std::vector<mpq_class>& vals) {
    mpz_class l = 1;
    for (const auto& v : vals) l = lcm(l, mpz_class(v.get_den()));
    std::vector<mpz_class> ints;
    mpz_class g = 0;
    for (const auto& v : vals) {
        mpz_class x = mpz_class(v.get_num()) * (l / v.get_den());
        g = gcd(g, x);
        ints.push_back(x);
    }
    std::vector<int> out;
    for (auto& x : ints) {
        x /= g;
        if (!x.fits_sint_p()) throw LimitExceeded("symmetrizer entry overflows int");
        out.push_back(static_cast<int>(x.get_si()));
    }
    return out;
}

struct Checked {
    std::vector<std::string> violations;
    std::vector<int> d;  // exchangeable symmetrizer when valid
};

Checked check_spec(const QuiverSpec& spec) {
    Checked r;
    auto& out = r.violations;
    const int n = spec.n, m = spec.m, size = n + m;
    if (n < 1) out.push_back("BadSize: at least one exchangeable vertex is required");
    if (m < 0) out.push_back("BadSize: frozen vertex count is negative");
    if (!out.empty()) return r;

    std::set<std::pair<int, int>> seen_pairs;
    bool edges_ok = true;
    for (const auto& e : spec.edges) {
        std::string name = label(e.from) + "->" + label(e.to);
        if (e.from < 0 || e.from >= size || e.to < 0 || e.to >= size) {
            out.push_back("VertexOutOfRange: arrow " + name + " leaves 1.." + std::to_string(size));
            edges_ok = false;
            continue;
        }
        if (e.from == e.to) {
            out.push_back("Loop: arrow " + name);
            edges_ok = false;
            continue;
        }
        if (e.v.forward <= 0 || e.v.backward <= 0) {
            out.push_back("NonPositiveValuation: arrow " + name + " has valuation (" +
                          std::to_string(e.v.forward) + "," + std::to_string(e.v.backward) + ")");
            edges_ok = false;
        }
        if (seen_pairs.count({e.from, e.to})) {
            out.push_back("DuplicateEdge: arrow " + name + " appears twice");
            edges_ok = false;
        } else if (seen_pairs.count({e.to, e.from})) {
            out.push_back("Antiparallel: arrows " + name + " and " + label(e.to) + "->" + label(e.from));
            edges_ok = false;
        }
        seen_pairs.insert({e.from, e.to});
    }

    std::vector<mpq_class> d(static_cast<std::size_t>(size), 0);
    bool d_given = spec.d.has_value();
    if (d_given) {
        const auto& given = *spec.d;
        if (static_cast<int>(given.size()) != n && static_cast<int>(given.size()) != size) {
            out.push_back("BadSymmetrizer: d has length " + std::to_string(given.size()) + ", expected " +
                          std::to_string(n) + " or " + std::to_string(size));
            d_given = false;
            edges_ok = false;
        } else {
            for (std::size_t i = 0; i < given.size(); ++i) {
                if (given[i] <= 0) {
                    out.push_back("BadSymmetrizer: d_" + label(static_cast<int>(i)) + " = " +
                                  std::to_string(given[i]) + " is not positive");
                    edges_ok = false;
                }
                d[i] = given[i];
            }
        }
    }

    if (edges_ok) {
        if (d_given) {
            for (const auto& e : spec.edges) {
                if (frozen_pair(n, e.from, e.to)) continue;
                auto fi = static_cast<std::size_t>(e.from), ti = static_cast<std::size_t>(e.to);
                if (d[fi] != 0 && d[ti] != 0 && d[fi] * e.v.forward != d[ti] * e.v.backward)
                    out.push_back("NoSymmetrizer: d_" + label(e.from) + "*v_" + label(e.from) + label(e.to) +
                                  " != v_" + label(e.to) + label(e.from) + "*d_" + label(e.to));
            }
        }
        if (out.empty()) {
            Edge bad;
            if (!propagate_symmetrizer(n, size, spec.edges, d, &bad))
                out.push_back("NoSymmetrizer: valuations around a cycle through " + label(bad.from) + "->" +
                              label(bad.to) + " admit no positive symmetrizer");
        }
    }

    std::vector<int> b(static_cast<std::size_t>(size * size), 0);
    if (edges_ok)
        for (const auto& e : spec.edges) b[static_cast<std::size_t>(e.from * size + e.to)] = 1;
    if (edges_ok && spec.require_connected) {
        std::vector<int> sym(static_cast<std::size_t>(n * n), 0);
        for (const auto& e : spec.edges)
            if (e.from < n && e.to < n) {
                sym[static_cast<std::size_t>(e.from * n + e.to)] = 1;
                sym[static_cast<std::size_t>(e.to * n + e.from)] = 1;
            }
        auto comps = components_of(n, sym, n);
        if (comps.size() > 1)
            out.push_back("Disconnected: exchangeable part has " + std::to_string(comps.size()) + " components");
    }
    if (!out.empty()) return r;

    if (d_given) {
        for (int i = 0; i < n; ++i) r.d.push_back(static_cast<int>(d[static_cast<std::size_t>(i)].get_num().get_si()));
    } else {
        // Least positive symmetrizer per exchangeable component.
        std::vector<int> sym(static_cast<std::size_t>(n * n), 0);
        for (const auto& e : spec.edges)
            if (e.from < n && e.to < n) {
                sym[static_cast<std::size_t>(e.from * n + e.to)] = 1;
                sym[static_cast<std::size_t>(e.to * n + e.from)] = 1;
            }
        r.d.assign(static_cast<std::size_t>(n), 1);
        for (const auto& comp : components_of(n, sym, n)) {
            std::vector<mpq_class> vals;
            for (int v : comp) vals.push_back(d[static_cast<std::size_t>(v)]);
            auto ints = integral_scaling(vals);
            for (std::size_t t = 0; t < comp.size(); ++t) r.d[static_cast<std::size_t>(comp[t])] = ints[t];
        }
    }
    return r;
}

std::vector<Edge> edges_from_matrix(int n, int size, const std::vector<int>& b, bool include_frozen_pairs) {
    std::vector<Edge> out;
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            int x = b[static_cast<std::size_t>(i * size + j)];
            if (x > 0 && (include_frozen_pairs || !frozen_pair(n, i, j)))
                out.push_back({i, j, {x, -b[static_cast<std::size_t>(j * size + i)]}});
        }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::string> validate(const QuiverSpec& spec) { return check_spec(spec).violations; }

ValuedQuiver ValuedQuiver::build(const QuiverSpec& spec) {
    auto checked = check_spec(spec);
    if (!checked.violations.empty()) throw ValidationError(std::move(checked.violations));
    const int size = spec.n + spec.m;
    std::vector<int> b(static_cast<std::size_t>(size * size), 0);
    for (const auto& e : spec.edges) {
        b[static_cast<std::size_t>(e.from * size + e.to)] = e.v.forward;
        b[static_cast<std::size_t>(e.to * size + e.from)] = -e.v.backward;
    }
    return from_trusted_matrix(spec.n, spec.m, std::move(b), std::move(checked.d));
}

ValuedQuiver ValuedQuiver::from_trusted_matrix(int n, int m, std::vector<int> b, std::vector<int> d) {
    ValuedQuiver q;
    q.n_ = n;
    q.m_ = m;
    q.b_ = std::move(b);
    q.d_ = std::move(d);
    return q;
}

std::optional<Valuation> ValuedQuiver::valuation(int i, int j) const {
    int x = b(i, j);
    if (x <= 0) return std::nullopt;
    return Valuation{x, -b(j, i)};
}

int ValuedQuiver::edge_weight(int i, int j) const { return std::abs(b(i, j) * b(j, i)); }

std::vector<Edge> ValuedQuiver::edges(bool include_frozen_pairs) const {
    return edges_from_matrix(n_, size(), b_, include_frozen_pairs);
}

QuiverSpec ValuedQuiver::to_spec() const {
    QuiverSpec s;
    s.n = n_;
    s.m = m_;
    s.edges = edges(false);
    s.d = d_;
    s.require_connected = false;
    return s;
}

ExchangeMatrix::ExchangeMatrix(int n, int m, std::vector<int> entries, std::vector<int> d)
    : n_(n), m_(m), entries_(std::move(entries)), d_(std::move(d)) {
    if (n < 0 || m < 0 || entries_.size() != static_cast<std::size_t>((n + m) * (n + m)))
        throw DimensionMismatch("exchange matrix must be (n+m) x (n+m)");
}

ExchangeMatrix operator-(const ExchangeMatrix& b) {
    auto e = b.entries_;
    for (auto& x : e) x = -x;
    return ExchangeMatrix(b.n_, b.m_, std::move(e), b.d_);
}

ExchangeMatrix to_matrix(const ValuedQuiver& q) {
    return ExchangeMatrix(q.rank(), q.frozen_count(), q.matrix(), q.symmetrizer());
}

ValuedQuiver from_matrix(const ExchangeMatrix& b, bool require_connected) {
    std::vector<std::string> out;
    const int size = b.size();
    for (int i = 0; i < size; ++i) {
        if (b.at(i, i) != 0) out.push_back("Loop: diagonal entry b_" + label(i) + label(i) + " is nonzero");
        for (int j = i + 1; j < size; ++j) {
            int x = b.at(i, j), y = b.at(j, i);
            bool ok = (x == 0 && y == 0) || (x > 0 && y < 0) || (x < 0 && y > 0);
            if (!ok)
                out.push_back("NotSignSkew: b_" + label(i) + label(j) + " = " + std::to_string(x) + ", b_" +
                              label(j) + label(i) + " = " + std::to_string(y));
        }
    }
    if (!out.empty()) throw ValidationError(std::move(out));
    QuiverSpec spec;
    spec.n = b.rank();
    spec.m = b.frozen_count();
    spec.require_connected = require_connected;
    spec.edges = edges_from_matrix(b.rank(), size, b.entries(), true);
    if (!b.symmetrizer().empty()) spec.d = b.symmetrizer();
    auto checked = check_spec(spec);
    if (!checked.violations.empty()) throw ValidationError(std::move(checked.violations));
    return ValuedQuiver::from_trusted_matrix(b.rank(), b.frozen_count(), b.entries(), std::move(checked.d));
}

ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, int k) {
    const int size = b.size();
    if (k < 0 || k >= b.rank()) throw DimensionMismatch("mutation index " + std::to_string(k + 1) + " is not exchangeable");
    std::vector<int> e(static_cast<std::size_t>(size * size));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            std::int64_t x = b.at(i, j);
            if (i == k || j == k) {
                x = -x;
            } else {
                std::int64_t bik = b.at(i, k), bkj = b.at(k, j);
                std::int64_t prod = bik * bkj;
                if (prod > 0) x += bik > 0 ? prod : -prod;
            }
            e[static_cast<std::size_t>(i * size + j)] = checked_entry(x);
        }
    return ExchangeMatrix(b.rank(), b.frozen_count(), std::move(e), b.symmetrizer());
}

ValuedQuiver mutate(const ValuedQuiver& q, int k) {
    auto m = mutate_matrix(to_matrix(q), k);
    return ValuedQuiver::from_trusted_matrix(q.rank(), q.frozen_count(), m.entries(), q.symmetrizer());
}

ValuedQuiver mutate_by_quiver_rules(const ValuedQuiver& q, int k) {
    if (k < 0 || k >= q.rank()) throw DimensionMismatch("mutation index " + std::to_string(k + 1) + " is not exchangeable");
    std::map<std::pair<int, int>, Valuation> arrows;
    for (const auto& e : q.edges(true)) arrows[{e.from, e.to}] = e.v;

    // Reverse the arrows at k, swapping valuation components.
    std::map<std::pair<int, int>, Valuation> next;
    for (const auto& [key, v] : arrows) {
        if (key.first == k || key.second == k)
            next[{key.second, key.first}] = {v.backward, v.forward};
        else
            next[key] = v;
    }
    auto checked_mul = [](int a, int c) { return checked_entry(static_cast<std::int64_t>(a) * c); };

    // Each path i -> k -> j composes into the arrow between i and j.
    for (const auto& [in_key, in_v] : arrows) {
        if (in_key.second != k) continue;
        const int i = in_key.first;
        for (const auto& [out_key, out_v] : arrows) {
            if (out_key.first != k) continue;
            const int j = out_key.second;
            const int p = checked_mul(in_v.forward, out_v.forward);     // v_ik v_kj
            const int r = checked_mul(in_v.backward, out_v.backward);   // v_ki v_jk
            if (auto it = next.find({i, j}); it != next.end()) {
                it->second.forward = checked_entry(static_cast<std::int64_t>(it->second.forward) + p);
                it->second.backward = checked_entry(static_cast<std::int64_t>(it->second.backward) + r);
            } else if (auto rit = next.find({j, i}); rit != next.end()) {
                const Valuation old = rit->second;  // (v_ji, v_ij)
                if (p < old.backward) {
                    rit->second = {old.forward - r, old.backward - p};
                } else if (p > old.backward) {
                    next.erase(rit);
                    next[{i, j}] = {p - old.backward, r - old.forward};
                } else {
                    next.erase(rit);
                }
            } else {
                next[{i, j}] = {p, r};
            }
        }
    }

    const int size = q.size();
    std::vector<int> b(static_cast<std::size_t>(size * size), 0);
    for (const auto& [key, v] : next) {
        b[static_cast<std::size_t>(key.first * size + key.second)] = v.forward;
        b[static_cast<std::size_t>(key.second * size + key.first)] = -v.backward;
    }
    return ValuedQuiver::from_trusted_matrix(q.rank(), q.frozen_count(), std::move(b), q.symmetrizer());
}

ValuedQuiver negate(const ValuedQuiver& q) {
    auto b = q.matrix();
    for (auto& x : b) x = -x;
    return ValuedQuiver::from_trusted_matrix(q.rank(), q.frozen_count(), std::move(b), q.symmetrizer());
}

// ---------------------------------------------------------------------------

Permutation Permutation::identity(int n) {
    Permutation p;
    p.image.resize(static_cast<std::size_t>(n));
    std::iota(p.image.begin(), p.image.end(), 0);
    return p;
}

Permutation Permutation::transposition(int n, int i, int j) {
    auto p = identity(n);
    std::swap(p.image[static_cast<std::size_t>(i)], p.image[static_cast<std::size_t>(j)]);
    return p;
}

bool Permutation::is_valid() const {
    std::vector<char> hit(image.size(), 0);
    for (int v : image) {
        if (v < 0 || v >= size() || hit[static_cast<std::size_t>(v)]) return false;
        hit[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (image[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.image.resize(image.size());
    for (int i = 0; i < size(); ++i) p.image[static_cast<std::size_t>(image[static_cast<std::size_t>(i)])] = i;
    return p;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    Permutation p;
    p.image.resize(b.image.size());
    for (int i = 0; i < b.size(); ++i) p.image[static_cast<std::size_t>(i)] = a(b(i));
    return p;
}

ValuedQuiver apply_permutation(const Permutation& sigma, const ValuedQuiver& q) {
    if (sigma.size() != q.rank() || !sigma.is_valid())
        throw DimensionMismatch("permutation does not match the exchangeable vertices");
    const int size = q.size();
    std::vector<int> b(static_cast<std::size_t>(size * size), 0);
    std::vector<int> d(q.symmetrizer().size());
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) b[static_cast<std::size_t>(sigma(i) * size + sigma(j))] = q.b(i, j);
    for (int i = 0; i < q.rank(); ++i) d[static_cast<std::size_t>(sigma(i))] = q.symmetrizer()[static_cast<std::size_t>(i)];
    return ValuedQuiver::from_trusted_matrix(q.rank(), q.frozen_count(), std::move(b), std::move(d));
}

// ---------------------------------------------------------------------------

MutationWord MutationWord::from_application_order(std::vector<int> order) {
    std::reverse(order.begin(), order.end());
    return MutationWord{std::move(order)};
}

MutationWord MutationWord::pentagon(int i, int j) { return MutationWord{{i, j, i, j, i}}; }

std::vector<int> MutationWord::application_order() const { return {letters.rbegin(), letters.rend()}; }

MutationWord MutationWord::reduced() const {
    std::vector<int> out;
    for (int k : letters) {
        if (!out.empty() && out.back() == k)
            out.pop_back();
        else
            out.push_back(k);
    }
    return MutationWord{std::move(out)};
}

MutationWord MutationWord::reversed() const { return MutationWord{application_order()}; }

MutationWord operator*(const MutationWord& a, const MutationWord& b) {
    MutationWord w = a;
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return w;
}

ValuedQuiver apply_word(const ValuedQuiver& q, const MutationWord& w) {
    ValuedQuiver cur = q;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) cur = mutate(cur, *it);
    return cur;
}

// ---------------------------------------------------------------------------

int weight(const ValuedQuiver& q, bool include_frozen) {
    int best = 0;
    const int lim = include_frozen ? q.size() : q.rank();
    for (int i = 0; i < lim; ++i)
        for (int j = i + 1; j < lim; ++j)
            if (!frozen_pair(q.rank(), i, j)) best = std::max(best, q.edge_weight(i, j));
    return best;
}

std::vector<int> neighbors(const ValuedQuiver& q, int i, bool include_frozen) {
    std::vector<int> out;
    const int lim = include_frozen ? q.size() : q.rank();
    for (int j = 0; j < lim; ++j)
        if (j != i && q.b(i, j) != 0 && !frozen_pair(q.rank(), i, j)) out.push_back(j);
    return out;
}

bool is_simply_laced(const ValuedQuiver& q, bool include_frozen) { return weight(q, include_frozen) <= 1; }

bool has_heavy_edge(const ValuedQuiver& q, bool include_frozen) { return weight(q, include_frozen) >= 5; }

bool is_zigzag(const ValuedQuiver& q) {
    for (int i = 0; i < q.rank(); ++i) {
        auto nb = neighbors(q, i);
        if (nb.size() == 1) continue;
        if (nb.empty()) return false;
        bool all_out = std::all_of(nb.begin(), nb.end(), [&](int j) { return q.b(i, j) > 0; });
        bool all_in = std::all_of(nb.begin(), nb.end(), [&](int j) { return q.b(i, j) < 0; });
        if (!all_out && !all_in) return false;
    }
    return true;
}

bool is_oriented_3cycle(const ValuedQuiver& q, int i, int j, int k) {
    if (i == j || j == k || i == k) return false;
    return (q.b(i, j) > 0 && q.b(j, k) > 0 && q.b(k, i) > 0) || (q.b(j, i) > 0 && q.b(k, j) > 0 && q.b(i, k) > 0);
}

bool is_isosceles_3cycle(const ValuedQuiver& q, int i, int j, int k) {
    if (!is_oriented_3cycle(q, i, j, k)) return false;
    int a = q.edge_weight(i, j), b = q.edge_weight(j, k), c = q.edge_weight(k, i);
    return a == b || b == c || a == c;
}

bool is_equilateral_3cycle(const ValuedQuiver& q, int i, int j, int k) {
    if (!is_oriented_3cycle(q, i, j, k)) return false;
    int a = q.edge_weight(i, j), b = q.edge_weight(j, k), c = q.edge_weight(k, i);
    return a == b && b == c;
}

std::vector<std::array<int, 3>> oriented_3cycles(const ValuedQuiver& q) {
    std::vector<std::array<int, 3>> out;
    for (int i = 0; i < q.rank(); ++i)
        for (int j = i + 1; j < q.rank(); ++j)
            for (int k = j + 1; k < q.rank(); ++k)
                if (is_oriented_3cycle(q, i, j, k)) out.push_back({i, j, k});
    return out;
}

std::vector<std::vector<int>> exchangeable_components(const ValuedQuiver& q) {
    const int n = q.rank();
    std::vector<int> b(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[static_cast<std::size_t>(i * n + j)] = q.b(i, j);
    return components_of(n, b, n);
}

bool is_exchangeable_connected(const ValuedQuiver& q) { return exchangeable_components(q).size() == 1; }

std::vector<Edge> certifying_heavy_edges(const ValuedQuiver& q) {
    std::vector<Edge> out;
    for (const auto& comp : exchangeable_components(q)) {
        if (comp.size() < 3) continue;
        for (int i : comp)
            for (int j : comp)
                if (q.b(i, j) > 0 && q.edge_weight(i, j) >= 5) out.push_back({i, j, *q.valuation(i, j)});
    }
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.from, a.to) < std::pair(b.from, b.to);
    });
    return out;
}

ValuedQuiver induced_subquiver(const ValuedQuiver& q, const std::vector<int>& vertices) {
    const int k = static_cast<int>(vertices.size());
    for (int v : vertices)
        if (!q.is_exchangeable(v)) throw DimensionMismatch("induced subquiver takes exchangeable vertices only");
    std::vector<int> b(static_cast<std::size_t>(k * k));
    std::vector<int> d(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) {
        d[static_cast<std::size_t>(a)] = q.symmetrizer()[static_cast<std::size_t>(vertices[static_cast<std::size_t>(a)])];
        for (int c = 0; c < k; ++c)
            b[static_cast<std::size_t>(a * k + c)] = q.b(vertices[static_cast<std::size_t>(a)], vertices[static_cast<std::size_t>(c)]);
    }
    return ValuedQuiver::from_trusted_matrix(k, 0, std::move(b), std::move(d));
}

ValuedQuiver exchangeable_part(const ValuedQuiver& q) {
    std::vector<int> all(static_cast<std::size_t>(q.rank()));
    std::iota(all.begin(), all.end(), 0);
    return induced_subquiver(q, all);
}

FreezeResult freeze(const ValuedQuiver& q, const std::vector<int>& vertices) {
    std::vector<char> frozen_now(static_cast<std::size_t>(q.rank()), 0);
    std::vector<std::string> bad;
    for (int v : vertices) {
        if (!q.is_exchangeable(v))
            bad.push_back("NotExchangeable: vertex " + label(v) + " cannot be frozen");
        else
            frozen_now[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<int> order;  // old vertex at each new position
    for (int v = 0; v < q.rank(); ++v)
        if (!frozen_now[static_cast<std::size_t>(v)]) order.push_back(v);
    const int new_n = static_cast<int>(order.size());
    if (new_n == 0) bad.push_back("FreezesAll: no exchangeable vertex would remain");
    if (!bad.empty()) throw ValidationError(std::move(bad));
    for (int v = q.rank(); v < q.size(); ++v) order.push_back(v);
    for (int v = 0; v < q.rank(); ++v)
        if (frozen_now[static_cast<std::size_t>(v)]) order.push_back(v);

    const int size = q.size();
    FreezeResult r;
    r.new_label.assign(static_cast<std::size_t>(size), 0);
    for (int p = 0; p < size; ++p) r.new_label[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;
    std::vector<int> b(static_cast<std::size_t>(size * size));
    for (int a = 0; a < size; ++a)
        for (int c = 0; c < size; ++c)
            b[static_cast<std::size_t>(a * size + c)] = q.b(order[static_cast<std::size_t>(a)], order[static_cast<std::size_t>(c)]);
    std::vector<int> d;
    for (int p = 0; p < new_n; ++p) d.push_back(q.symmetrizer()[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])]);
    r.quiver = ValuedQuiver::from_trusted_matrix(new_n, size - new_n, std::move(b), std::move(d));
    return r;
}

std::vector<Decomposition> coherent_decompositions(const ValuedQuiver& q) {
    const int size = q.size(), n = q.rank();
    if (size > 14) throw LimitExceeded("coherent decompositions are enumerated up to 14 vertices");
    auto adjacent = [&](int i, int j) { return q.b(i, j) != 0 && !frozen_pair(n, i, j); };
    auto connected = [&](std::uint32_t mask) {
        if (mask == 0) return false;
        std::uint32_t reach = mask & (~mask + 1), frontier = reach;
        while (frontier) {
            std::uint32_t next = 0;
            for (int u = 0; u < size; ++u) {
                if (!(frontier >> u & 1u)) continue;
                for (int w = 0; w < size; ++w)
                    if ((mask >> w & 1u) && !(reach >> w & 1u) && adjacent(u, w)) next |= 1u << w;
            }
            reach |= next;
            frontier = next;
        }
        return reach == mask;
    };
    auto to_list = [&](std::uint32_t mask) {
        std::vector<int> v;
        for (int i = 0; i < size; ++i)
            if (mask >> i & 1u) v.push_back(i);
        return v;
    };

    // Each vertex is first-only (0), second-only (1) or shared (2).
    std::vector<Decomposition> out;
    std::vector<int> tag(static_cast<std::size_t>(size), 0);
    std::uint64_t total = 1;
    for (int i = 0; i < size; ++i) total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        std::uint32_t only_a = 0, only_b = 0, shared = 0;
        for (int i = 0; i < size; ++i, c /= 3) {
            int t = static_cast<int>(c % 3);
            (t == 0 ? only_a : t == 1 ? only_b : shared) |= 1u << i;
        }
        if (!only_a || !only_b || !shared) continue;
        // Unordered pairs: the lowest non-shared vertex sits in the first part.
        std::uint32_t non_shared = only_a | only_b;
        if (!((non_shared & (~non_shared + 1)) & only_a)) continue;
        bool crossing = false;
        for (int i = 0; i < size && !crossing; ++i)
            if (only_a >> i & 1u)
                for (int j = 0; j < size; ++j)
                    if ((only_b >> j & 1u) && adjacent(i, j)) {
                        crossing = true;
                        break;
                    }
        if (crossing || !connected(only_a | shared) || !connected(only_b | shared)) continue;
        out.push_back({to_list(only_a | shared), to_list(only_b | shared), to_list(shared)});
    }
    return out;
}

}  // namespace clusterq
