#pragma once

#include <cstdint>

#include "fiidlab/graph.hpp"

namespace fiidlab {

struct SpectralResult {
    double lambda2 = 0.0;             // second-largest adjacency eigenvalue
    double cheeger_lower_bound = 0.0; // (d - lambda2) / 2
    std::uint32_t iterations = 0;
    double residual = 0.0;
};

// Power iteration on A + dI restricted to the complement of the constant
// eigenvector (the shift keeps the iteration from locking onto a large
// negative eigenvalue on bipartite-like graphs). Requires a connected
// regular graph; throws convergence_error with the best iterate if the
// residual does not reach tol within max_iters.
SpectralResult spectral_gap(const Graph& g, double tol = 1e-9,
                            std::uint32_t max_iters = 20000);

} // namespace fiidlab
