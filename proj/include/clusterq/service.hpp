#pragma once

// Request handlers shared by the command line tool and the HTTP server.
// Every handler is a pure function of its JSON request.

#include <exception>
#include <string>
#include <vector>

#include "clusterq/serialize.hpp"

namespace clusterq::service {

/// Budgets used when a request leaves them out.
struct Limits {
    int max_members = 5000;
    int max_seeds = 2000;
    int max_depth = 16;
    int max_len = 8;
};

/// Names accepted by handle(): validate, mutate, word, class, analyze,
/// symmetric, variables, catalog.
const std::vector<std::string>& operations();

/// Runs one operation. Throws PayloadError for malformed requests and the
/// engine's errors otherwise.
json handle(const std::string& op, const json& request, const Limits& limits = {});

struct Failure {
    int http_status = 500;
    int exit_code = 3;
    json body;
};

/// Maps an exception thrown by handle() to its response.
Failure describe(std::exception_ptr e);

/// True when a result stopped on a budget.
bool truncated(const json& result);

}  // namespace clusterq::service
