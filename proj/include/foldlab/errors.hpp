#pragma once

#include <stdexcept>
#include <string>

namespace foldlab {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Incompatible contexts: mismatched algebras, wrong mode, bad flags.
struct ConfigError : Error {
    using Error::Error;
};

// Input data violates a documented precondition (zero root, empty vector, ...).
struct DegenerateInputError : Error {
    using Error::Error;
};

struct DivisionByZeroError : Error {
    using Error::Error;
};

// Integral mode: element exists over the fraction field but not in k.
struct NotInvertibleError : Error {
    using Error::Error;
};

// A folded-representation or root-datum axiom failed on the given data.
struct ValidationError : Error {
    using Error::Error;
};

// Configured size/iteration bound exceeded.
struct ResourceLimitError : Error {
    using Error::Error;
};

// An identity the implementation relies on failed; indicates a bug or bad
// realization data, never a user error.
struct InvariantViolationError : Error {
    using Error::Error;
};

struct LookupError : Error {
    using Error::Error;
};

}  // namespace foldlab
