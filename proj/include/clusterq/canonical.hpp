#pragma once

// Symmetry detection and canonical forms for valued quivers.
//
// Only exchangeable vertices are permuted. Frozen vertices are labeled and
// must match pointwise; arrows between two frozen vertices are ignored.

#include <optional>
#include <string>

#include "clusterq/quiver.hpp"

namespace clusterq {

/// Rank above which exhaustive searches refuse to run.
inline constexpr int kDefaultSymmetryRankLimit = 12;

struct SymmetryOptions {
    /// Also accept apply_permutation(sigma, q1) == negate(q2).
    bool allow_sign = false;
    /// Compare arrows only and ignore the symmetrizer.
    bool ignore_symmetrizer = false;
    int rank_limit = kDefaultSymmetryRankLimit;
};

struct SymmetryMatch {
    Permutation sigma;
    /// +1: sigma(q1) == q2, -1: sigma(q1) == -q2.
    int sign = 1;
};

/// Searches for sigma with apply_permutation(sigma, q1) == q2 (or -q2 when
/// signs are allowed), trying the positive sign first.
std::optional<SymmetryMatch> find_symmetry(const ValuedQuiver& q1, const ValuedQuiver& q2,
                                           const SymmetryOptions& options = {});

inline std::optional<SymmetryMatch> find_symmetry(const ValuedQuiver& q1, const ValuedQuiver& q2, bool allow_sign) {
    SymmetryOptions o;
    o.allow_sign = allow_sign;
    return find_symmetry(q1, q2, o);
}

/// True when q and q2 agree as matrices on every pair that is not frozen-frozen.
bool same_up_to_frozen_pairs(const ValuedQuiver& a, const ValuedQuiver& b);

struct CanonicalLabeling {
    /// Exact byte-string key.
    std::string key;
    /// apply_permutation(sigma, sign > 0 ? q : negate(q)) is the canonical
    /// representative.
    Permutation sigma;
    int sign = 1;
};

CanonicalLabeling canonical_labeling(const ValuedQuiver& q, bool modulo_sign = false,
                                     int rank_limit = kDefaultSymmetryRankLimit);

/// Keys are equal exactly when find_symmetry succeeds with the same sign mode.
std::string canonical_form(const ValuedQuiver& q, bool modulo_sign = false,
                           int rank_limit = kDefaultSymmetryRankLimit);

/// The canonical representative itself.
ValuedQuiver canonical_quiver(const ValuedQuiver& q, bool modulo_sign = false,
                              int rank_limit = kDefaultSymmetryRankLimit);

}  // namespace clusterq
