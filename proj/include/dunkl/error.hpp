#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dunkl {

// Violated precondition on an argument (λ < 0, p out of range, y <= 0 ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Kernel evaluated on (or too close to) its diagonal singularity.
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterative numerics that failed to settle. Carries the sequence seen so far.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, std::vector<double> partial_values)
        : std::runtime_error(what), partials(std::move(partial_values)) {}
    std::vector<double> partials;
};

// Truncated integral whose neglected tail is not small enough.
struct TruncationError : std::runtime_error {
    TruncationError(const std::string& what, double tail)
        : std::runtime_error(what), tail_estimate(tail) {}
    double tail_estimate;
};

struct UnsupportedInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Atom construction failure (ill-conditioned Gram-Schmidt, zero atom).
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dunkl
