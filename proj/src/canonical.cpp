#include "clusterq/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "clusterq/error.hpp"

namespace clusterq {

namespace {

void check_rank(const ValuedQuiver& q, int limit) {
    if (q.rank() > limit)
        throw LimitExceeded("rank " + std::to_string(q.rank()) + " exceeds the symmetry search limit " +
                            std::to_string(limit));
}

// ---------------------------------------------------------------------------
// Backtracking symmetry search.

using Signature = std::vector<int>;

Signature vertex_signature(const ValuedQuiver& q, int v, bool with_d) {
    Signature s;
    s.push_back(with_d ? q.symmetrizer()[static_cast<std::size_t>(v)] : 0);
    for (int f = q.rank(); f < q.size(); ++f) {
        s.push_back(q.b(v, f));
        s.push_back(q.b(f, v));
    }
    std::vector<std::pair<int, int>> incident;
    int out_deg = 0, in_deg = 0;
    for (int w = 0; w < q.rank(); ++w) {
        if (w == v || q.b(v, w) == 0) continue;
        incident.push_back({q.b(v, w), q.b(w, v)});
        (q.b(v, w) > 0 ? out_deg : in_deg)++;
    }
    std::sort(incident.begin(), incident.end());
    s.push_back(out_deg);
    s.push_back(in_deg);
    for (auto [a, b] : incident) {
        s.push_back(a);
        s.push_back(b);
    }
    return s;
}

std::optional<Permutation> match(const ValuedQuiver& q1, const ValuedQuiver& q2, bool with_d) {
    const int n = q1.rank();
    std::vector<Signature> s1(static_cast<std::size_t>(n)), s2(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        s1[static_cast<std::size_t>(v)] = vertex_signature(q1, v, with_d);
        s2[static_cast<std::size_t>(v)] = vertex_signature(q2, v, with_d);
    }
    {
        auto a = s1, b = s2;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    std::vector<std::vector<int>> cands(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
            if (s1[static_cast<std::size_t>(v)] == s2[static_cast<std::size_t>(w)]) cands[static_cast<std::size_t>(v)].push_back(w);

    // Assignment order: fewest candidates first, then stay adjacent to
    // already ordered vertices so consistency checks bite early.
    std::vector<int> order;
    std::vector<char> placed(static_cast<std::size_t>(n), 0);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        std::pair<int, int> best_key{0, 0};
        for (int v = 0; v < n; ++v) {
            if (placed[static_cast<std::size_t>(v)]) continue;
            int links = 0;
            for (int u : order) links += q1.b(v, u) != 0;
            std::pair<int, int> key{-links, static_cast<int>(cands[static_cast<std::size_t>(v)].size())};
            if (best < 0 || key < best_key) {
                best = v;
                best_key = key;
            }
        }
        placed[static_cast<std::size_t>(best)] = 1;
        order.push_back(best);
    }

    std::vector<int> image(static_cast<std::size_t>(n), -1);
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    auto consistent = [&](int v, int w, int depth) {
        for (int t = 0; t < depth; ++t) {
            int u = order[static_cast<std::size_t>(t)];
            int iu = image[static_cast<std::size_t>(u)];
            if (q1.b(v, u) != q2.b(w, iu) || q1.b(u, v) != q2.b(iu, w)) return false;
        }
        return true;
    };
    auto dfs = [&](auto&& self, int depth) -> bool {
        if (depth == n) return true;
        int v = order[static_cast<std::size_t>(depth)];
        for (int w : cands[static_cast<std::size_t>(v)]) {
            if (taken[static_cast<std::size_t>(w)] || !consistent(v, w, depth)) continue;
            image[static_cast<std::size_t>(v)] = w;
            taken[static_cast<std::size_t>(w)] = 1;
            if (self(self, depth + 1)) return true;
            taken[static_cast<std::size_t>(w)] = 0;
        }
        image[static_cast<std::size_t>(v)] = -1;
        return false;
    };
    if (!dfs(dfs, 0)) return std::nullopt;
    return Permutation{image};
}

// ---------------------------------------------------------------------------
// Canonical labeling: lexicographic minimum of the position-by-position
// encoding over orderings that respect a refined invariant coloring.

class Canonizer {
public:
    explicit Canonizer(const ValuedQuiver& q) : q_(q), n_(q.rank()) {
        refine_colors();
        find_twins();
    }

    std::pair<std::vector<int>, std::vector<int>> run() {
        cur_ = {n_, q_.frozen_count()};
        order_.clear();
        used_.assign(static_cast<std::size_t>(n_), 0);
        best_.clear();
        dfs();
        return {best_, best_order_};
    }

private:
    void refine_colors() {
        std::vector<Signature> sig(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) {
            auto& s = sig[static_cast<std::size_t>(v)];
            s.push_back(q_.symmetrizer()[static_cast<std::size_t>(v)]);
            for (int f = n_; f < q_.size(); ++f) {
                s.push_back(q_.b(v, f));
                s.push_back(q_.b(f, v));
            }
        }
        int count = assign_colors(sig);
        while (true) {
            for (int v = 0; v < n_; ++v) {
                std::vector<std::array<int, 3>> nb;
                for (int w = 0; w < n_; ++w)
                    if (w != v && q_.b(v, w) != 0) nb.push_back({color_[static_cast<std::size_t>(w)], q_.b(v, w), q_.b(w, v)});
                std::sort(nb.begin(), nb.end());
                auto& s = sig[static_cast<std::size_t>(v)];
                s.assign(1, color_[static_cast<std::size_t>(v)]);
                for (const auto& t : nb) s.insert(s.end(), t.begin(), t.end());
            }
            int next = assign_colors(sig);
            if (next == count) break;
            count = next;
        }
    }

    int assign_colors(const std::vector<Signature>& sig) {
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        color_.resize(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v)
            color_[static_cast<std::size_t>(v)] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), sig[static_cast<std::size_t>(v)]) - sorted.begin());
        return static_cast<int>(sorted.size());
    }

    // a and b are twins when swapping them is an automorphism.
    void find_twins() {
        twin_.assign(static_cast<std::size_t>(n_ * n_), 0);
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b) {
                if (color_[static_cast<std::size_t>(a)] != color_[static_cast<std::size_t>(b)] || q_.b(a, b) != 0) continue;
                bool same = q_.symmetrizer()[static_cast<std::size_t>(a)] == q_.symmetrizer()[static_cast<std::size_t>(b)];
                for (int x = 0; x < q_.size() && same; ++x) {
                    if (x == a || x == b) continue;
                    same = q_.b(a, x) == q_.b(b, x) && q_.b(x, a) == q_.b(x, b);
                }
                twin_[static_cast<std::size_t>(a * n_ + b)] = twin_[static_cast<std::size_t>(b * n_ + a)] = same;
            }
    }

    void chunk_for(int v, std::vector<int>& out) const {
        out.clear();
        out.push_back(q_.symmetrizer()[static_cast<std::size_t>(v)]);
        for (int f = n_; f < q_.size(); ++f) {
            out.push_back(q_.b(v, f));
            out.push_back(q_.b(f, v));
        }
        for (int u : order_) {
            out.push_back(q_.b(v, u));
            out.push_back(q_.b(u, v));
        }
    }

    void dfs() {
        const int t = static_cast<int>(order_.size());
        if (t == n_) {
            if (best_.empty() || cur_ < best_) {
                best_ = cur_;
                best_order_ = order_;
            }
            return;
        }
        int min_color = -1;
        for (int v = 0; v < n_; ++v)
            if (!used_[static_cast<std::size_t>(v)] && (min_color < 0 || color_[static_cast<std::size_t>(v)] < min_color))
                min_color = color_[static_cast<std::size_t>(v)];

        std::vector<int> cands;
        for (int v = 0; v < n_; ++v) {
            if (used_[static_cast<std::size_t>(v)] || color_[static_cast<std::size_t>(v)] != min_color) continue;
            bool dup = std::any_of(cands.begin(), cands.end(), [&](int c) { return twin_[static_cast<std::size_t>(c * n_ + v)]; });
            if (!dup) cands.push_back(v);
        }
        std::vector<std::vector<int>> chunks(cands.size());
        for (std::size_t c = 0; c < cands.size(); ++c) chunk_for(cands[c], chunks[c]);
        const auto& min_chunk = *std::min_element(chunks.begin(), chunks.end());

        const std::size_t start = cur_.size();
        if (!best_.empty()) {
            bool greater = std::lexicographical_compare(best_.begin() + static_cast<std::ptrdiff_t>(start),
                                                        best_.begin() + static_cast<std::ptrdiff_t>(start + min_chunk.size()),
                                                        min_chunk.begin(), min_chunk.end());
            if (greater) return;
            if (!std::equal(min_chunk.begin(), min_chunk.end(), best_.begin() + static_cast<std::ptrdiff_t>(start))) best_.clear();
        }
        const std::vector<int> chosen = min_chunk;
        for (std::size_t c = 0; c < cands.size(); ++c) {
            if (chunks[c] != chosen) continue;
            int v = cands[c];
            cur_.insert(cur_.end(), chosen.begin(), chosen.end());
            order_.push_back(v);
            used_[static_cast<std::size_t>(v)] = 1;
            dfs();
            used_[static_cast<std::size_t>(v)] = 0;
            order_.pop_back();
            cur_.resize(start);
        }
    }

    const ValuedQuiver& q_;
    int n_;
    std::vector<int> color_;
    std::vector<char> twin_;
    std::vector<int> cur_, order_, best_, best_order_;
    std::vector<char> used_;
};

std::string encode_key(const std::vector<int>& v) {
    std::string key;
    key.reserve(v.size() * 4);
    for (int x : v) {
        auto u = static_cast<std::uint32_t>(x) ^ 0x80000000u;  // order-preserving
        for (int shift = 24; shift >= 0; shift -= 8) key.push_back(static_cast<char>((u >> shift) & 0xffu));
    }
    return key;
}

}  // namespace

bool same_up_to_frozen_pairs(const ValuedQuiver& a, const ValuedQuiver& b) {
    if (a.rank() != b.rank() || a.frozen_count() != b.frozen_count()) return false;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            if ((i < a.rank() || j < a.rank()) && a.b(i, j) != b.b(i, j)) return false;
    return true;
}

std::optional<SymmetryMatch> find_symmetry(const ValuedQuiver& q1, const ValuedQuiver& q2,
                                           const SymmetryOptions& options) {
    if (q1.rank() != q2.rank() || q1.frozen_count() != q2.frozen_count()) return std::nullopt;
    check_rank(q1, options.rank_limit);
    const bool with_d = !options.ignore_symmetrizer;
    // The identity is preferred with either sign before a general search.
    auto same_d = [&](const ValuedQuiver& x) { return !with_d || q1.symmetrizer() == x.symmetrizer(); };
    if (same_up_to_frozen_pairs(q1, q2) && same_d(q2)) return SymmetryMatch{Permutation::identity(q1.rank()), 1};
    if (options.allow_sign && same_up_to_frozen_pairs(q1, negate(q2)) && same_d(q2))
        return SymmetryMatch{Permutation::identity(q1.rank()), -1};
    if (auto p = match(q1, q2, with_d)) return SymmetryMatch{*p, 1};
    if (options.allow_sign)
        if (auto p = match(q1, negate(q2), with_d)) return SymmetryMatch{*p, -1};
    return std::nullopt;
}

CanonicalLabeling canonical_labeling(const ValuedQuiver& q, bool modulo_sign, int rank_limit) {
    check_rank(q, rank_limit);
    auto labeled = [](const ValuedQuiver& x) {
        auto [code, order] = Canonizer(x).run();
        Permutation sigma;
        sigma.image.assign(order.size(), 0);
        for (std::size_t t = 0; t < order.size(); ++t) sigma.image[static_cast<std::size_t>(order[t])] = static_cast<int>(t);
        return std::pair(std::move(code), std::move(sigma));
    };
    auto [code, sigma] = labeled(q);
    int sign = 1;
    if (modulo_sign) {
        auto [ncode, nsigma] = labeled(negate(q));
        if (ncode < code) {
            code = std::move(ncode);
            sigma = std::move(nsigma);
            sign = -1;
        }
    }
    return {encode_key(code), std::move(sigma), sign};
}

std::string canonical_form(const ValuedQuiver& q, bool modulo_sign, int rank_limit) {
    return canonical_labeling(q, modulo_sign, rank_limit).key;
}

ValuedQuiver canonical_quiver(const ValuedQuiver& q, bool modulo_sign, int rank_limit) {
    auto lab = canonical_labeling(q, modulo_sign, rank_limit);
    return apply_permutation(lab.sigma, lab.sign > 0 ? q : negate(q));
}

}  // namespace clusterq
