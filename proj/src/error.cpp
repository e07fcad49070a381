#include "clusterq/error.hpp"

namespace clusterq {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
    std::string out = "invalid input";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += i == 0 ? ": " : "; ";
        out += v[i];
    }
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

}  // namespace clusterq
