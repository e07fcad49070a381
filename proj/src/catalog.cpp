#include "clusterq/catalog.hpp"

#include <algorithm>
#include <map>

#include "clusterq/error.hpp"

namespace clusterq {

namespace {

// Small label-based builder; every arrow given as (from, to, v_ft, v_tf).
class Builder {
public:
    Builder(std::string name, std::string description, std::vector<std::string> exchangeable,
            std::vector<std::string> frozen = {})
        : name_(std::move(name)), description_(std::move(description)), labels_(std::move(exchangeable)) {
        n_ = static_cast<int>(labels_.size());
        labels_.insert(labels_.end(), frozen.begin(), frozen.end());
    }

    Builder& arrow(const std::string& from, const std::string& to, int vf = 1, int vb = 1) {
        edges_.push_back({index(from), index(to), {vf, vb}});
        return *this;
    }
    Builder& d(std::vector<int> values) {
        d_ = std::move(values);
        return *this;
    }
    Builder& mark(const std::string& label) {
        marked_ = index(label);
        return *this;
    }

    CatalogEntry build() const {
        QuiverSpec s;
        s.n = n_;
        s.m = static_cast<int>(labels_.size()) - n_;
        s.edges = edges_;
        if (!d_.empty()) s.d = d_;
        return {name_, description_, labels_, ValuedQuiver::build(s), marked_};
    }

private:
    int index(const std::string& label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) throw Error("catalog builder: unknown label " + label);
        return static_cast<int>(it - labels_.begin());
    }

    std::string name_, description_;
    std::vector<std::string> labels_;
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> d_;
    int marked_ = -1;
};

std::vector<std::string> numbered(int count, int first = 1) {
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) out.push_back(std::to_string(first + i));
    return out;
}

// Linear path 1 -> 2 -> ... -> len plus extra vertices.
Builder path_with(const std::string& name, const std::string& desc, int len, int extra) {
    Builder b(name, desc, numbered(len + extra));
    for (int i = 1; i < len; ++i) b.arrow(std::to_string(i), std::to_string(i + 1));
    return b;
}

// Elliptic types share a core: T -> c -> Z for three vertices c, and Z -> T (2,2).
Builder elliptic_core(const std::string& name, const std::string& desc, std::vector<std::string> labels,
                      const std::vector<std::string>& spokes) {
    Builder b(name, desc, std::move(labels));
    for (const auto& c : spokes) b.arrow("T", c).arrow(c, "Z");
    b.arrow("Z", "T", 2, 2);
    return b;
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> out;
    for (int n = 2; n <= 10; ++n)
        out.push_back(path_with("a" + std::to_string(n), "linearly oriented path of type A" + std::to_string(n), n, 0).build());

    out.push_back(path_with("e6", "type E6", 5, 1).arrow("6", "3").build());
    out.push_back(path_with("e7", "type E7", 6, 1).arrow("7", "3").build());
    out.push_back(path_with("e8", "type E8", 7, 1).arrow("8", "3").build());
    out.push_back(path_with("e6_1", "affine type E6 (three arms of length two)", 5, 2).arrow("6", "7").arrow("7", "3").build());
    out.push_back(path_with("e7_1", "affine type E7", 7, 1).arrow("8", "4").build());
    out.push_back(path_with("e8_1", "affine type E8", 8, 1).arrow("9", "3").build());

    out.push_back(elliptic_core("e6_11", "elliptic type E6(1,1)", {"T", "Z", "B", "C", "E", "A", "D", "F"}, {"B", "C", "E"})
                      .arrow("A", "B")
                      .arrow("C", "D")
                      .arrow("E", "F")
                      .build());
    out.push_back(elliptic_core("e7_11", "elliptic type E7(1,1)", {"T", "Z", "c0", "c1", "c2", "c4", "c6", "c7", "c8"},
                                {"c2", "c4", "c6"})
                      .arrow("c0", "c1")
                      .arrow("c1", "c2")
                      .arrow("c6", "c7")
                      .arrow("c7", "c8")
                      .build());
    out.push_back(elliptic_core("e8_11", "elliptic type E8(1,1)",
                                {"T", "Z", "c0", "c1", "c3", "c5", "c6", "c7", "c8", "c9"}, {"c1", "c3", "c5"})
                      .arrow("c0", "c1")
                      .arrow("c5", "c6")
                      .arrow("c6", "c7")
                      .arrow("c7", "c8")
                      .arrow("c8", "c9")
                      .build());

    out.push_back(Builder("x6", "exceptional type X6", {"a", "b", "c", "d", "e", "f"})
                      .arrow("a", "b")
                      .arrow("b", "d")
                      .arrow("b", "f")
                      .arrow("c", "b")
                      .arrow("d", "a", 2, 2)
                      .arrow("f", "c", 2, 2)
                      .arrow("e", "b")
                      .build());
    out.push_back(Builder("x7", "exceptional type X7", {"a", "b", "c", "d", "f", "p", "q"})
                      .arrow("a", "b")
                      .arrow("b", "d")
                      .arrow("b", "f")
                      .arrow("b", "q")
                      .arrow("c", "b")
                      .arrow("p", "b")
                      .arrow("d", "a", 2, 2)
                      .arrow("f", "c", 2, 2)
                      .arrow("q", "p", 2, 2)
                      .build());

    out.push_back(Builder("markov_222", "oriented triangle with every arrow valued (2,2)", {"i", "j", "k"})
                      .arrow("i", "k", 2, 2)
                      .arrow("k", "j", 2, 2)
                      .arrow("j", "i", 2, 2)
                      .build());
    out.push_back(Builder("ex_3_3_2", "valued triangle of weights 9, 6, 6 with a simply-laced tail", {"i", "j", "k", "1", "2"})
                      .arrow("i", "j", 3, 3)
                      .arrow("k", "i", 3, 2)
                      .arrow("j", "k", 2, 3)
                      .arrow("i", "1")
                      .arrow("2", "1")
                      .d({3, 3, 2, 3, 3})
                      .build());
    out.push_back(Builder("ex_2_8_2", "rank-5 path with a weight-2 arrow at its start", numbered(5))
                      .arrow("1", "2", 2, 1)
                      .arrow("2", "3")
                      .arrow("3", "4")
                      .arrow("4", "5")
                      .build());
    out.push_back(Builder("ex_2_8_3", "simply-laced quiver with an infinite mutation class", {"i", "j", "k", "v"})
                      .arrow("k", "j")
                      .arrow("v", "k")
                      .arrow("v", "i")
                      .arrow("v", "j")
                      .arrow("i", "j")
                      .build());

    out.push_back(Builder("ex_3_8_a", "weight-4 triangle equal to minus itself up to symmetry", {"i", "j", "k"})
                      .arrow("i", "k", 4, 1)
                      .arrow("j", "i", 1, 4)
                      .arrow("k", "j", 2, 2)
                      .d({1, 4, 4})
                      .build());
    out.push_back(Builder("ex_3_8_b", "simply-laced rank-6 quiver with twelve arrows", {"i", "j", "k", "l", "m", "n"})
                      .arrow("i", "l")
                      .arrow("i", "k")
                      .arrow("j", "i")
                      .arrow("j", "n")
                      .arrow("k", "j")
                      .arrow("k", "m")
                      .arrow("l", "j")
                      .arrow("l", "m")
                      .arrow("m", "n")
                      .arrow("m", "i")
                      .arrow("n", "l")
                      .arrow("n", "k")
                      .build());
    out.push_back(Builder("ex_3_8_c", "two weight-2 triangles sharing a (2,2) arrow", {"i", "j", "k", "l"})
                      .arrow("i", "k", 2, 1)
                      .arrow("j", "i", 1, 2)
                      .arrow("j", "l", 1, 2)
                      .arrow("k", "j", 2, 2)
                      .arrow("l", "k", 2, 1)
                      .d({1, 2, 2, 1})
                      .build());
    out.push_back(Builder("ex_3_8_d", "weight-2 square with two simply-laced triangles", {"i", "j", "k", "l", "z", "r"})
                      .arrow("z", "k")
                      .arrow("i", "k", 2, 1)
                      .arrow("j", "i", 1, 2)
                      .arrow("j", "z")
                      .arrow("j", "l", 1, 2)
                      .arrow("k", "r")
                      .arrow("l", "k", 2, 1)
                      .arrow("r", "j")
                      .d({1, 2, 2, 1, 2, 2})
                      .build());
    out.push_back(Builder("ex_3_8_e", "two triangles glued at a short vertex", {"i", "j", "k", "l", "t"})
                      .arrow("i", "t", 1, 2)
                      .arrow("l", "i", 2, 2)
                      .arrow("t", "l", 2, 1)
                      .arrow("t", "k", 2, 1)
                      .arrow("j", "t", 1, 2)
                      .arrow("k", "j", 2, 2)
                      .d({2, 2, 2, 2, 1})
                      .build());
    out.push_back(Builder("ex_3_8_f", "star with centre t", {"i", "j", "l", "t"})
                      .arrow("i", "t")
                      .arrow("t", "l")
                      .arrow("j", "t")
                      .build());

    // Rigid patterns: triangle i -> j -> k -> i of weights 2, 4, 2, optionally
    // extended by i - 1 (y) and 1 - 2 (z).
    for (auto [y, z] : {std::pair{1, 0}, std::pair{1, 1}, std::pair{0, 0}}) {
        std::vector<std::string> labels{"i", "j", "k"};
        if (y) labels.push_back("1");
        if (z) labels.push_back("2");
        std::vector<int> d{1, 2, 2};
        d.resize(labels.size(), 1);
        Builder b("rigid_3_2_a_y" + std::to_string(y) + "z" + std::to_string(z),
                  "rigid pattern: weight-4 triangle with short vertex i", labels);
        b.arrow("i", "j", 2, 1).arrow("j", "k", 2, 2).arrow("k", "i", 1, 2).d(d).mark("i");
        if (y) b.arrow("i", "1");
        if (z) b.arrow("2", "1");
        out.push_back(b.build());
    }
    out.push_back(Builder("rigid_3_2_b", "rigid pattern: weight-4 triangle sharing a vertex with a simply-laced one",
                          {"k", "v", "j", "i"})
                      .arrow("k", "j")
                      .arrow("v", "k")
                      .arrow("v", "i", 1, 2)
                      .arrow("j", "v", 2, 2)
                      .arrow("i", "j", 2, 1)
                      .d({2, 2, 2, 1})
                      .mark("i")
                      .build());

    out.push_back(Builder("paper_2_4", "rank-3 quiver with four frozen vertices", {"1", "2", "3"}, {"3_1", "2_1", "1_1", "1_2"})
                      .arrow("3", "3_1", 2, 3)
                      .arrow("3", "2", 2, 3)
                      .arrow("2", "1", 1, 2)
                      .arrow("2_1", "2", 2, 1)
                      .arrow("1_1", "1")
                      .arrow("1", "3", 6, 2)
                      .arrow("1", "1_2", 2, 3)
                      .d({1, 2, 3})
                      .build());

    // Heads of weight-4 classes.
    for (int x = 1; x <= 4; ++x)
        out.push_back(Builder("leading_q_a_x" + std::to_string(x), "head Q_{a,x} with x = " + std::to_string(x), {"v", "j", "k"})
                          .arrow("v", "k", x, 1)
                          .arrow("j", "v", 1, x)
                          .arrow("k", "j", 2, 2)
                          .build());
    out.push_back(Builder("leading_q_a", "head Q_a", {"v", "j", "k"})
                      .arrow("v", "k", 1, 2)
                      .arrow("j", "v", 1, 2)
                      .arrow("k", "j", 4, 1)
                      .build());
    for (int t = 1; t <= 2; ++t)
        out.push_back(Builder("leading_q_c_t" + std::to_string(t), "head Q_{c,t} with t = " + std::to_string(t), {"v", "k", "j", "l"})
                          .arrow("v", "j", t, 1)
                          .arrow("k", "v", 1, t)
                          .arrow("k", "l", 1, 2)
                          .arrow("j", "k", 2, 2)
                          .arrow("l", "j", 2, 1)
                          .build());
    out.push_back(Builder("leading_q_d", "head Q_d", {"v", "i", "j", "l"})
                      .arrow("v", "j")
                      .arrow("i", "v")
                      .arrow("i", "l", 1, 3)
                      .arrow("j", "i", 2, 2)
                      .arrow("l", "j", 3, 1)
                      .build());
    return out;
}

const std::map<std::string, std::string, std::less<>>& alias_map() {
    static const std::map<std::string, std::string, std::less<>> m{
        {"ex_3_3_1_a", "a2"},
        {"ex_3_3_1_b", "markov_222"},
        {"ex_2_8_1", "paper_2_4"},
    };
    return m;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
    if (auto it = alias_map().find(name); it != alias_map().end()) name = it->second;
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw Error("unknown catalog quiver: " + std::string(name));
}

const ValuedQuiver& catalog_quiver(std::string_view name) { return catalog_entry(name).quiver; }

std::vector<std::string> catalog_names() {
    std::vector<std::string> out;
    for (const auto& e : catalog()) out.push_back(e.name);
    return out;
}

std::vector<std::pair<std::string, std::string>> catalog_aliases() {
    return {alias_map().begin(), alias_map().end()};
}

int vertex_of(const CatalogEntry& entry, std::string_view label) {
    auto it = std::find(entry.labels.begin(), entry.labels.end(), label);
    return it == entry.labels.end() ? -1 : static_cast<int>(it - entry.labels.begin());
}

}  // namespace clusterq
