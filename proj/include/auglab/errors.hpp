#pragma once

#include <stdexcept>
#include <string>

namespace auglab {

// Invalid inputs (non-finite entries, dimension mismatches, bad parameters) use
// std::invalid_argument directly. The types below classify failures of otherwise
// well-formed requests.

/// Constraint system has no solution (targets are not consistent).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numeric routine failed to converge or produced an unusable factorization.
class NumericFailure : public std::runtime_error {
public:
    explicit NumericFailure(const std::string& msg) : std::runtime_error(msg) {}
};

/// Single-point condition requested on a direction with vanishing denominator.
class DegenerateDirectionError : public std::runtime_error {
public:
    explicit DegenerateDirectionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// No (w, v) pair with w'Sv != 0 exists for this geometry; every augmentation is safe.
class ConstructionImpossibleError : public std::runtime_error {
public:
    explicit ConstructionImpossibleError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A perturbation direction in the evaluation domain is not covered by the fitted span.
class CoverageViolationError : public std::runtime_error {
public:
    explicit CoverageViolationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace auglab
