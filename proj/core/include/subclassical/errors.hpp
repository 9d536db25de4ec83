#pragma once

#include <stdexcept>
#include <string>

namespace subclassical {

/// Thrown when an input violates a documented precondition (bad matrix,
/// inconsistent dimensions, non-stochastic rows, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a Kraus family fails the complete-positivity check.
class CpViolationError : public ValidationError {
public:
    explicit CpViolationError(const std::string& what) : ValidationError(what) {}
};

} // namespace subclassical
