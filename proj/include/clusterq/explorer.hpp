#pragma once

// Mutation classes and the analyses built on them: finiteness, rigid
// vertices, vertex-to-vertex symmetry, symmetric sequences and variables.
//
// Class-level analyses work on the exchangeable part of the input quiver.

#include <optional>
#include <string>
#include <vector>

#include "clusterq/canonical.hpp"
#include "clusterq/quiver.hpp"
#include "clusterq/seed.hpp"

namespace clusterq {

enum class Tri { Yes, No, Unknown };
std::string to_string(Tri t);

struct ClassBudget {
    int max_members = 50000;
    /// Longest witness word for a new member; -1 is unbounded.
    int max_depth = -1;
    int rank_limit = 16;
};

enum class ClassStatus { Finite, InfiniteWitness, BudgetExceeded };
std::string to_string(ClassStatus s);

struct ClassMember {
    /// Exactly apply_word(exchangeable_part(q), word).
    ValuedQuiver quiver;
    MutationWord word;
    std::string key;
};

struct MemberFlags {
    std::vector<int> rigid_vertices;
    bool vv_symmetric = false;
    bool simply_laced = false;
    bool zigzag = false;
};

struct ClassReport {
    ClassStatus status = ClassStatus::BudgetExceeded;
    std::vector<ClassMember> members;
    /// Set for InfiniteWitness: replaying it on the root gives `witness_edge`.
    MutationWord witness_word;
    Edge witness_edge;
    /// Max member weight; -1 unless Finite.
    int class_weight = -1;
    /// Filled by analyze_members, one entry per member.
    std::vector<MemberFlags> analyses;
};

/// Breadth-first search over quivers up to relabeling. Stops with a witness
/// as soon as a certifying heavy edge appears.
ClassReport explore_class(const ValuedQuiver& q, const ClassBudget& budget = {});
void analyze_members(ClassReport& report);

struct FiniteTypeResult {
    Tri verdict = Tri::Unknown;
    MutationWord witness;
    Edge edge;
};
FiniteTypeResult is_finite_mutation_type(const ValuedQuiver& q, const ClassBudget& budget = {});

// ---------------------------------------------------------------------------
// 3-cycles

/// Oriented 3-cycles whose induced weight grows under some ordered pair of
/// mutations: w(mu_x mu_y T) > w(mu_y T) with x != y inside the triple.
std::vector<std::array<int, 3>> detect_unbounded_3cycles(const ValuedQuiver& q);

struct SearchHit {
    bool found = false;
    MutationWord word;
    /// Member index or vertex triple, depending on the search.
    std::vector<int> detail;
};

/// Depth-bounded search for a word producing an unbounded 3-cycle. A miss is
/// not a proof of absence.
SearchHit is_pre_unbounded(const ValuedQuiver& q, int depth = 4, int max_nodes = 20000);

struct IsoscelesScan {
    Tri verdict = Tri::Unknown;
    MutationWord word;
    std::array<int, 3> triple{};
};
/// Scans the class (without stopping at heavy edges) for a non-isosceles
/// oriented 3-cycle. `No` only when the class closed.
IsoscelesScan has_non_isosceles_3cycle_in_class(const ValuedQuiver& q, int max_members = 5000);

// ---------------------------------------------------------------------------
// Rigid vertices and pattern matching

/// pattern vertex p sits at vertex map[p] of q, with q.b(map[a], map[b]) ==
/// sign * pattern.b(a, b) for all a, b (induced, symmetrizer ignored).
struct PatternMatch {
    std::vector<int> map;
    int sign = 1;
};

/// Every induced embedding of the exchangeable part of `pattern` into the
/// exchangeable part of `q`, with either sign when `allow_sign`.
std::vector<PatternMatch> find_induced_matches(const ValuedQuiver& pattern, const ValuedQuiver& q, bool allow_sign = true);

struct RigidVertex {
    int vertex = -1;
    std::string pattern;
};
std::vector<RigidVertex> detect_rigid_vertices(const ValuedQuiver& q);

// ---------------------------------------------------------------------------
// Vertex-to-vertex symmetry

struct VvCertificate {
    int vertex = -1;
    /// -1 when mu_vertex alone returns +-sigma(Q).
    int counter = -1;
    Permutation sigma;
    int sign = 1;
};

struct VvResult {
    bool symmetric = false;
    std::vector<VvCertificate> certificates;
    int failing_vertex = -1;
};
VvResult is_vv_sigma_symmetric(const ValuedQuiver& q);

// ---------------------------------------------------------------------------
// Symmetric sequences and variables

struct SymmetrySequence {
    MutationWord word;
    Permutation sigma;
    int sign = 1;
};

/// Reduced words of length <= max_len with apply_word(q, w) == sigma(q).
std::vector<SymmetrySequence> find_symmetric_sequences(const ValuedQuiver& q, int max_len, int max_words = 200000);
/// Indices of class members sigma-similar to q.
std::vector<int> symmetric_members(const ClassReport& report, const ValuedQuiver& q);

struct SymmetricVariables {
    std::vector<LaurentPoly> symmetric;
    std::vector<LaurentPoly> all;
    Tri equal = Tri::Unknown;
    ClosureStatus status = ClosureStatus::Complete;
    int seeds = 0;
    int symmetric_seeds = 0;
};

/// A variable is symmetric when it sits in some reachable seed whose quiver is
/// sigma-similar to the root (or +-sigma-similar with `allow_sign`).
SymmetricVariables symmetric_cluster_variables(const ValuedQuiver& q, const SeedBudget& budget = {},
                                               bool allow_sign = false);

struct SymmetricAlgebraVerdict {
    Tri verdict = Tri::Unknown;
    /// "infinite", "rigid", "budget" or empty.
    std::string reason;
    MutationWord witness;
    Edge edge;
    RigidVertex rigid;
    int member = -1;
};

/// Finite mutation class and no rigid vertex in any member (or only in q
/// itself with `initial_only`).
SymmetricAlgebraVerdict is_symmetric_algebra(const ValuedQuiver& q, const ClassBudget& budget = {},
                                             bool initial_only = false);

// ---------------------------------------------------------------------------
// Permutations inside the mutation group

/// Shortest word with apply_word(q, w) == tau(q), searching labeled quivers.
std::optional<MutationWord> realize_permutation(const ValuedQuiver& q, const Permutation& tau, int max_nodes = 20000);

struct FullGroupResult {
    Tri verdict = Tri::Unknown;
    /// Words realizing the adjacent transpositions (i i+1), when searched.
    std::vector<std::optional<MutationWord>> transpositions;
    bool verified = false;
};
/// Throws ValidationError for rank <= 2.
FullGroupResult has_full_symmetric_group(const ValuedQuiver& q, const ClassBudget& budget = {},
                                         int verify_max_rank = 6, int max_nodes = 20000);

struct BlockingResult {
    bool realizable = false;
    MutationWord word;
};
/// Throws ValidationError unless i and j are adjacent exchangeable vertices.
BlockingResult is_blocking_edge(const ValuedQuiver& q, int i, int j, int max_nodes = 20000);

// ---------------------------------------------------------------------------
// Avenues and counter sequences

struct Avenue {
    bool exists = false;
    /// i, the middle vertex k, then on towards the nearest vertex of a
    /// non-simply-laced edge when there is one.
    std::vector<int> path;
};
Avenue has_simply_laced_avenue(const ValuedQuiver& q, int i, int pre_unbounded_depth = 3);

struct CounterSequence {
    MutationWord word;
    Permutation sigma;
    int sign = 1;
};

/// Searches for mu_bar with mu_bar(mu_i(member)) == +-sigma(q0), where mu_bar
/// uses mu_i only inside pentagon blocks mu_[i,j] or mu_[j,i].
std::optional<CounterSequence> find_counter_sequence(const ValuedQuiver& q0, const ValuedQuiver& member, int i,
                                                     int max_len, int min_len = 0, int max_nodes = 200000);

/// The word mu_k mu_[i,k] mu_i for a neighbor k of i.
MutationWord avenue_word(int i, int k);

// ---------------------------------------------------------------------------
// Weight classification and decompositions

struct HeadMatch {
    int member = -1;
    std::string head;
    std::vector<int> vertices;
    int sign = 1;
    /// (head vertex, outside vertex) pairs.
    std::vector<std::pair<int, int>> tails;
};

struct WeightClassification {
    int weight = 0;
    bool witness_found = false;
    int witness_member = -1;
    std::string witness;
    std::vector<HeadMatch> heads;
    /// Weight-4 members with a weight-4 edge outside every matched head.
    std::vector<int> unclassified_members;
};

/// Throws Error unless the report is Finite.
WeightClassification weight_classify(const ClassReport& report);

struct SubalgebraDecomposition {
    /// Exchangeable vertices of the symmetric part.
    std::vector<int> part;
    std::vector<int> complement;
    /// "trivial", "infinite" or "rigid".
    std::string complement_kind;
    Decomposition gluing;
};

std::optional<SubalgebraDecomposition> check_subalgebra_decomposition(const ValuedQuiver& q,
                                                                      const ClassBudget& budget = {});

}  // namespace clusterq
