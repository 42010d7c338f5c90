#pragma once

#include <stdexcept>
#include <string>

namespace mgo {

/// Malformed user input (bad edge endpoints, unparseable files, ...).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller broke a documented precondition of an operation.
class ContractViolation : public std::runtime_error {
public:
    explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

/// A provided structure (orientation, decomposition, feedback set) failed validation.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// An exact solver was asked to run above its configured size cap.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// An internal guarantee that should hold by construction was violated.
/// Reaching this is a bug in the solver, never a user error.
class InternalInvariantError : public std::logic_error {
public:
    explicit InternalInvariantError(const std::string& what) : std::logic_error(what) {}
};

inline void internal_check(bool condition, const std::string& what) {
    if (!condition) {
        throw InternalInvariantError("internal invariant violated: " + what);
    }
}

}  // namespace mgo
