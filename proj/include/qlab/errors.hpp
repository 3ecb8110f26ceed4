#pragma once

#include <stdexcept>
#include <string>

namespace qlab {

// Incompatible inputs: mismatched vertex sets, mixed fields, bad shapes.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation was asked to exceed its configured enumeration budget.
// `required` reports the size the computation would need.
struct budget_error : std::runtime_error {
    unsigned long long required;
    budget_error(const std::string& what, unsigned long long required_)
        : std::runtime_error(what), required(required_) {}
};

// A request would enumerate more objects than the hard size cap allows.
struct size_error : std::runtime_error {
    explicit size_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check failed (non-integer interpolation, non-cancelling
// denominator, broken postcondition).  Always indicates a bug or a wrong
// degree bound, never bad user input.
struct consistency_error : std::logic_error {
    explicit consistency_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qlab
