#pragma once

#include <stdexcept>
#include <string>

namespace turnpike {

/// Input violates an operation's stated precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to deliver a result (no bracket, no
/// convergence, singular integrand, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace turnpike
