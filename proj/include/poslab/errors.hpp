#pragma once

#include <stdexcept>
#include <string>

namespace poslab {

// Caller handed us an object outside a documented precondition.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The request is well formed but exceeds an explicit resource budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text/JSON, or an unreadable/unwritable stream.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace poslab
