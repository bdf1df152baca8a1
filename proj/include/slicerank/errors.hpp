#pragma once

#include <stdexcept>
#include <string>

namespace slicerank {

/// Bad user input: malformed instance, invalid field, precondition failure.
class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested computation exceeds a hard size gate.
class GateExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant failed. Always a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class DivisionByZero : public InvalidInput {
public:
    DivisionByZero() : InvalidInput("division by zero in finite field") {}
};

} // namespace slicerank
