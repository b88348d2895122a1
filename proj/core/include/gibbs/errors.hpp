#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gibbs {

// Base of every exception thrown by the library. The CLI maps the concrete
// subclasses onto exit codes, so new error kinds should derive from one of
// the classes below rather than from Error directly.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller broke a precondition (mismatched groups, support mismatch, ...).
class UsageError : public Error {
public:
    using Error::Error;
};

/// The request is well-formed but mathematically undefined for these inputs
/// (empty shell of a finite group, window missing a coordinate, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed the configured budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Input data failed schema or invariant validation.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Maximum number of group elements a ball enumeration may produce.
/// Overridable with GIBBSCERT_ELEMENT_BUDGET.
std::size_t element_budget();

/// Maximum number of candidate configurations an exhaustive enumeration may
/// visit. Overridable with GIBBSCERT_ENUM_BUDGET.
std::size_t enumeration_budget();

} // namespace gibbs
