#pragma once

// JSON forms of quivers, seeds and reports. External vertex numbers are
// 1-based; words are integer arrays written mu_{w0} mu_{w1} ... (last acts
// first).

#include <json.hpp>
#include <string>
#include <vector>

#include "clusterq/error.hpp"
#include "clusterq/explorer.hpp"
#include "clusterq/seed.hpp"

namespace clusterq {

using json = nlohmann::json;

/// Malformed payload: wrong JSON types or missing fields.
class PayloadError : public Error {
public:
    using Error::Error;
};

/// A quiver plus display labels, one per vertex.
struct LabeledQuiver {
    ValuedQuiver quiver;
    std::vector<std::string> labels;
};

std::vector<std::string> default_labels(const ValuedQuiver& q);

/// Reads the file format into a spec without validating it.
QuiverSpec spec_from_json(const json& j);
/// Accepts the file format, a catalog name ("a3" or "@a3") or
/// {"catalog": name}. Throws PayloadError or ValidationError.
LabeledQuiver quiver_from_json(const json& j);
json quiver_to_json(const ValuedQuiver& q, const std::vector<std::string>& labels = {});

json poly_to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const json& j, VarLayout layout);

json seed_to_json(const Seed& s, const std::vector<std::string>& labels = {});
/// {"quiver": ...} alone is the initial seed; otherwise "exact" carries the
/// cluster entries term by term.
Seed seed_from_json(const json& j, std::vector<std::string>* labels = nullptr);

json word_to_json(const MutationWord& w);
/// 1-based integers, checked against the rank.
MutationWord word_from_json(const json& j, int rank);

json class_report_to_json(const ClassReport& r, const std::vector<std::string>& labels);

}  // namespace clusterq
