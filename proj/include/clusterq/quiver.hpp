#pragma once

// Valued quivers and their skew-symmetrizable exchange matrices.
//
// Vertices are dense 0-based indices internally: exchangeable vertices are
// 0..n-1 and frozen vertices n..n+m-1. External formats (JSON, CLI) use the
// 1-based labels 1..n+m.

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace clusterq {

/// The ordered pair (v_ij, v_ji) carried by an arrow i -> j.
struct Valuation {
    int forward = 1;
    int backward = 1;

    int weight() const noexcept { return forward * backward; }
    friend bool operator==(const Valuation&, const Valuation&) = default;
};

struct Edge {
    int from = 0;
    int to = 0;
    Valuation v;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Unvalidated description of a quiver, as read from a file or built in code.
struct QuiverSpec {
    int n = 0;
    int m = 0;
    std::vector<Edge> edges;
    /// Symmetrizer on exchangeable vertices (length n), or on all n+m
    /// vertices. Omitted: the least positive one is computed.
    std::optional<std::vector<int>> d;
    /// Seed quivers need a connected exchangeable part.
    bool require_connected = true;
};

/// Every violated invariant, each as "<Code>: <message>". Empty means valid.
std::vector<std::string> validate(const QuiverSpec& spec);

class ExchangeMatrix;

class ValuedQuiver {
public:
    ValuedQuiver() = default;

    /// Validates and builds; throws ValidationError listing every violation.
    static ValuedQuiver build(const QuiverSpec& spec);
    /// Wraps a matrix the caller already knows to be valid (mutation results,
    /// relabelings). No checks.
    static ValuedQuiver from_trusted_matrix(int n, int m, std::vector<int> b, std::vector<int> d);

    int rank() const noexcept { return n_; }
    int frozen_count() const noexcept { return m_; }
    int size() const noexcept { return n_ + m_; }
    bool is_exchangeable(int v) const noexcept { return v >= 0 && v < n_; }

    int b(int i, int j) const { return b_[static_cast<std::size_t>(i * size() + j)]; }
    const std::vector<int>& matrix() const noexcept { return b_; }
    /// Symmetrizer of the exchangeable vertices.
    const std::vector<int>& symmetrizer() const noexcept { return d_; }

    /// Valuation of the arrow i -> j, if present.
    std::optional<Valuation> valuation(int i, int j) const;
    /// w_ij = v_ij * v_ji, zero when i and j are not adjacent.
    int edge_weight(int i, int j) const;
    /// Arrows in row-major order. Frozen-frozen arrows only on request.
    std::vector<Edge> edges(bool include_frozen_pairs = false) const;

    QuiverSpec to_spec() const;

    friend bool operator==(const ValuedQuiver&, const ValuedQuiver&) = default;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<int> b_;
    std::vector<int> d_;
};

/// Square (n+m) x (n+m) integer matrix together with the symmetrizer of the
/// exchangeable block.
class ExchangeMatrix {
public:
    ExchangeMatrix() = default;
    ExchangeMatrix(int n, int m, std::vector<int> entries, std::vector<int> d);

    int rank() const noexcept { return n_; }
    int frozen_count() const noexcept { return m_; }
    int size() const noexcept { return n_ + m_; }
    int at(int i, int j) const { return entries_[static_cast<std::size_t>(i * size() + j)]; }
    const std::vector<int>& entries() const noexcept { return entries_; }
    const std::vector<int>& symmetrizer() const noexcept { return d_; }

    friend bool operator==(const ExchangeMatrix&, const ExchangeMatrix&) = default;
    friend ExchangeMatrix operator-(const ExchangeMatrix& b);

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<int> entries_;
    std::vector<int> d_;
};

ExchangeMatrix to_matrix(const ValuedQuiver& q);
/// Throws ValidationError when the matrix is not skew-symmetrizable.
ValuedQuiver from_matrix(const ExchangeMatrix& b, bool require_connected = false);

/// Matrix mutation rule applied to every entry, frozen rows included.
ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, int k);

/// Mutation at exchangeable vertex k through the matrix rule (ground truth).
ValuedQuiver mutate(const ValuedQuiver& q, int k);
/// Mutation at k by local arrow rewriting: reverse the arrows at k, then
/// compose or cancel along every path i -> k -> j.
ValuedQuiver mutate_by_quiver_rules(const ValuedQuiver& q, int k);

/// Reverses every arrow and valuation.
ValuedQuiver negate(const ValuedQuiver& q);

/// A bijection of the exchangeable vertices; frozen vertices stay put.
struct Permutation {
    std::vector<int> image;

    static Permutation identity(int n);
    static Permutation transposition(int n, int i, int j);
    int size() const noexcept { return static_cast<int>(image.size()); }
    int operator()(int v) const { return v < size() ? image[static_cast<std::size_t>(v)] : v; }
    bool is_valid() const;
    bool is_identity() const;
    Permutation inverse() const;
    /// (a * b)(v) = a(b(v)).
    friend Permutation operator*(const Permutation& a, const Permutation& b);
    friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// Relabels vertex v as sigma(v): the arrow i -> j becomes sigma(i) -> sigma(j)
/// with the same valuation.
ValuedQuiver apply_permutation(const Permutation& sigma, const ValuedQuiver& q);

/// A word of mutations written left to right as mu_{l0} mu_{l1} ... and
/// applied right to left, so `letters.back()` acts first.
struct MutationWord {
    std::vector<int> letters;

    static MutationWord from_application_order(std::vector<int> order);
    /// mu_i mu_j mu_i mu_j mu_i.
    static MutationWord pentagon(int i, int j);

    std::vector<int> application_order() const;
    std::size_t size() const noexcept { return letters.size(); }
    bool empty() const noexcept { return letters.empty(); }
    /// Cancels adjacent mu_k mu_k pairs until none remain.
    MutationWord reduced() const;
    /// The word with its letters in opposite order.
    MutationWord reversed() const;

    /// Composition: (a * b) applies b first, then a.
    friend MutationWord operator*(const MutationWord& a, const MutationWord& b);
    friend bool operator==(const MutationWord&, const MutationWord&) = default;
};

ValuedQuiver apply_word(const ValuedQuiver& q, const MutationWord& w);

// ---------------------------------------------------------------------------
// Structural predicates. Unless `include_frozen` is set they only look at the
// exchangeable part.

int weight(const ValuedQuiver& q, bool include_frozen = false);
std::vector<int> neighbors(const ValuedQuiver& q, int i, bool include_frozen = false);
bool is_simply_laced(const ValuedQuiver& q, bool include_frozen = false);
bool is_zigzag(const ValuedQuiver& q);
bool has_heavy_edge(const ValuedQuiver& q, bool include_frozen = false);
bool is_oriented_3cycle(const ValuedQuiver& q, int i, int j, int k);
bool is_isosceles_3cycle(const ValuedQuiver& q, int i, int j, int k);
bool is_equilateral_3cycle(const ValuedQuiver& q, int i, int j, int k);
/// Vertex triples (ascending) spanning an oriented 3-cycle of exchangeable vertices.
std::vector<std::array<int, 3>> oriented_3cycles(const ValuedQuiver& q);
/// Connected components of the exchangeable part, each sorted.
std::vector<std::vector<int>> exchangeable_components(const ValuedQuiver& q);
bool is_exchangeable_connected(const ValuedQuiver& q);

/// Heavy (weight >= 5) exchangeable edges whose component has rank >= 3,
/// i.e. the ones that certify an infinite mutation class.
std::vector<Edge> certifying_heavy_edges(const ValuedQuiver& q);

/// Exchangeable subquiver on `vertices` (relabeled 0..k-1 in the given
/// order), frozen vertices dropped.
ValuedQuiver induced_subquiver(const ValuedQuiver& q, const std::vector<int>& vertices);
ValuedQuiver exchangeable_part(const ValuedQuiver& q);

struct FreezeResult {
    ValuedQuiver quiver;
    /// new_label[v] for every old vertex v.
    std::vector<int> new_label;
};

/// Turns the exchangeable vertices in `vertices` into frozen ones. Remaining
/// exchangeable vertices keep their order as 0..n-|I|-1, the old frozen
/// vertices follow, then the newly frozen ones. Throws ValidationError when
/// nothing exchangeable would remain.
FreezeResult freeze(const ValuedQuiver& q, const std::vector<int>& vertices);

/// Two connected overlapping parts covering every vertex, with no arrow
/// between the non-overlapping remainders.
struct Decomposition {
    std::vector<int> first;
    std::vector<int> second;
    std::vector<int> overlap;
};

/// All coherent decompositions over the n+m vertices, each unordered pair once.
std::vector<Decomposition> coherent_decompositions(const ValuedQuiver& q);

}  // namespace clusterq
