#pragma once

#include <stdexcept>
#include <string>

namespace stallings {

// Bad input text: unknown symbol, malformed line, wrong file shape.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation called outside its domain (wrong alphabet size, h < 2, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A stated precondition does not hold for the given values.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A theorem-backed invariant failed.  This is always a bug report, never a
// recoverable condition: either the implementation is wrong or a published
// theorem just fell over.
struct invariant_violation : std::runtime_error {
    explicit invariant_violation(const std::string& msg) : std::runtime_error(msg) {}
};

// Rejection sampling or witness search ran out of budget.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace stallings
