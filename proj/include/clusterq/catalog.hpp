#pragma once

// Built-in named quivers.

#include <string>
#include <string_view>
#include <vector>

#include "clusterq/quiver.hpp"

namespace clusterq {

struct CatalogEntry {
    std::string name;
    std::string description;
    /// One label per vertex, exchangeable vertices first.
    std::vector<std::string> labels;
    ValuedQuiver quiver;
    /// Vertex singled out by the entry (the rigid vertex of a rigid
    /// pattern), or -1.
    int marked_vertex = -1;
};

const std::vector<CatalogEntry>& catalog();
/// Accepts canonical names and aliases. Throws Error for unknown names.
const CatalogEntry& catalog_entry(std::string_view name);
const ValuedQuiver& catalog_quiver(std::string_view name);
std::vector<std::string> catalog_names();
/// Alternative names, e.g. "ex_3_3_1_b" for "markov_222".
std::vector<std::pair<std::string, std::string>> catalog_aliases();

/// Index of the vertex with the given label in a catalog entry, or -1.
int vertex_of(const CatalogEntry& entry, std::string_view label);

}  // namespace clusterq
