#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace clusterq {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A quiver, matrix or payload violates a structural invariant.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Exact division left a nonzero remainder. Inside seed mutation this is an
/// engine bug, since exchange relations always divide exactly.
class NonExactDivision : public Error {
public:
    using Error::Error;
};

/// Operands live in different ambient variable sets.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A configured hard limit (rank for exhaustive symmetry search, exponent
/// range) was exceeded.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

/// A computed cluster variable is not a Laurent polynomial with nonnegative
/// frozen exponents.
class LaurentViolation : public Error {
public:
    using Error::Error;
};

}  // namespace clusterq
