#pragma once

#include <stdexcept>
#include <string>

namespace affinitylab {

struct NotPrimePower : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

struct FieldMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegreeTooLow : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CheckpointCorrupt : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Signals an implementation bug: a structural fact the library relies on
// (e.g. closure of V_f under addition) failed to hold at runtime.
struct InternalInvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace affinitylab
