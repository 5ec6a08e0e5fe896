#pragma once

#include <stdexcept>
#include <string>

namespace papp {

/// Malformed ballot file or committee/portioning spec.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Violated structural precondition (bad index, committee of wrong size, ...).
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Problem too large for an exact procedure. `hint` names the fallback, if any.
struct CapacityError : std::runtime_error {
    CapacityError(const std::string& what, std::string hint_ = {})
        : std::runtime_error(what), hint(std::move(hint_)) {}
    std::string hint;
};

/// Iterative solver failed to reach the requested tolerance.
struct NumericalError : std::runtime_error {
    NumericalError(const std::string& what, double residual_)
        : std::runtime_error(what), residual(residual_) {}
    double residual;
};

/// Input outside the domain of the requested operation (e.g. PR with k not dividing n).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace papp
