#pragma once

#include <stdexcept>
#include <string>

namespace fiidlab {

// Invalid user-supplied parameters / specs. CLI maps this to exit code 2.
struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Iterative method failed to reach tolerance; carries the best iterate.
// CLI maps this to exit code 3.
struct convergence_error : std::runtime_error {
    double best_estimate;
    int iterations;
    convergence_error(const std::string& msg, double best, int iters)
        : std::runtime_error(msg), best_estimate(best), iterations(iters) {}
};

// File / stream problems, with path context. CLI maps this to exit code 4.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fiidlab
