#pragma once

#include <stdexcept>
#include <string>

namespace equibif {

// Assumption/validation failures (bad config, violated model assumptions).
// The CLI maps these to exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures (cutoff insufficiency, degenerate solves, size blowups).
// The CLI maps these to exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Caller broke an operation contract (e.g. querying a candidate outside Λ).
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace equibif
