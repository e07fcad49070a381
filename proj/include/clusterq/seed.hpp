#pragma once

// Seeds, the exchange relation and bounded exploration of the cluster pattern.

#include <string>
#include <vector>

#include "clusterq/laurent.hpp"
#include "clusterq/quiver.hpp"

namespace clusterq {

struct Seed {
    ValuedQuiver quiver;
    /// Entry i sits at exchangeable vertex i.
    std::vector<LaurentPoly> cluster;
    /// The frozen generators f1..fm; never change.
    std::vector<LaurentPoly> frozen;

    VarLayout layout() const noexcept { return {quiver.rank(), quiver.frozen_count()}; }
    friend bool operator==(const Seed&, const Seed&) = default;
};

Seed initial_seed(const ValuedQuiver& q);

/// Throws LaurentViolation unless p has nonnegative frozen exponents.
void check_laurent(const LaurentPoly& p);

/// Exchange relation at k. The new entry is checked with check_laurent.
Seed mutate_seed(const Seed& s, int k);
/// Reduces the word, then mutates right to left.
Seed apply_word(const Seed& s, const MutationWord& w);
/// Moves the entry at position i to sigma(i) alongside the quiver relabeling.
Seed apply_permutation(const Permutation& sigma, const Seed& s);

struct SeedBudget {
    int max_seeds = 20000;
    int max_depth = 24;
};

enum class ClosureStatus { Complete, Truncated };

std::string to_string(ClosureStatus s);

/// One seed of the explored pattern fragment. The seed is the one obtained by
/// mutating the parent's seed at `label`, so word_to() reproduces it exactly.
struct PatternNode {
    int parent = -1;
    int label = -1;
    int depth = 0;
    /// Variable ids by position.
    std::vector<int> cluster;
    ValuedQuiver quiver;
};

/// Seeds reachable from the root, deduplicated up to simultaneous relabeling
/// of positions and vertices.
struct SeedPattern {
    VarLayout layout;
    /// Interned cluster variables; ids index this list. The initial variables
    /// come first.
    std::vector<LaurentPoly> variables;
    std::vector<PatternNode> nodes;
    ClosureStatus status = ClosureStatus::Complete;
    /// Exchange relations actually evaluated (memo misses).
    long exchanges = 0;

    MutationWord word_to(int node) const;
    Seed seed_at(int node) const;
};

SeedPattern explore_seeds(const ValuedQuiver& q, const SeedBudget& budget = {});

struct VariableEnumeration {
    std::vector<LaurentPoly> variables;
    ClosureStatus status = ClosureStatus::Complete;
    int seeds = 0;
};

VariableEnumeration enumerate_cluster_variables(const ValuedQuiver& q, const SeedBudget& budget = {});

}  // namespace clusterq
