#include "fiidlab/spectral.hpp"

#include <cmath>
#include <vector>

#include "fiidlab/errors.hpp"
#include "fiidlab/rng.hpp"

namespace fiidlab {

SpectralResult spectral_gap(const Graph& g, double tol, std::uint32_t max_iters) {
    const std::uint32_t n = g.num_vertices();
    if (!g.is_regular()) throw invalid_parameter("spectral_gap: graph must be regular");
    if (n < 2) throw invalid_parameter("spectral_gap: need at least two vertices");
    if (!is_connected(g)) throw invalid_parameter("spectral_gap: graph must be connected");
    if (!(tol > 0)) throw invalid_parameter("spectral_gap: tol must be positive");
    const double d = g.degree();

    std::vector<double> x(n), ax(n);
    const std::uint64_t key = rng::stream_key(0x5eedu, 0x7777u);
    for (std::uint32_t v = 0; v < n; ++v) x[v] = rng::to_unit(rng::at(key, v)) - 0.5;

    auto project_normalize = [&](std::vector<double>& v) {
        double mean = 0.0;
        for (double t : v) mean += t;
        mean /= n;
        double norm = 0.0;
        for (double& t : v) {
            t -= mean;
            norm += t * t;
        }
        norm = std::sqrt(norm);
        for (double& t : v) t /= norm;
    };
    auto matvec = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (std::uint32_t v = 0; v < n; ++v) {
            double s = 0.0;
            for (std::uint32_t slot = 0; slot < g.degree(v); ++slot)
                s += in[g.neighbour(v, slot)];
            out[v] = s;
        }
    };

    project_normalize(x);
    double lambda = 0.0, residual = 0.0;
    for (std::uint32_t it = 1; it <= max_iters; ++it) {
        matvec(x, ax);
        lambda = 0.0;
        for (std::uint32_t v = 0; v < n; ++v) lambda += x[v] * ax[v];
        residual = 0.0;
        for (std::uint32_t v = 0; v < n; ++v) {
            const double r = ax[v] - lambda * x[v];
            residual += r * r;
        }
        residual = std::sqrt(residual);
        if (residual <= tol)
            return {lambda, (d - lambda) / 2.0, it, residual};
        // shifted step keeps the spectrum nonnegative: x <- (A + dI) x
        for (std::uint32_t v = 0; v < n; ++v) ax[v] += d * x[v];
        x.swap(ax);
        project_normalize(x);
    }
    throw convergence_error("spectral_gap: power iteration did not converge", lambda,
                            static_cast<int>(max_iters));
}

} // namespace fiidlab
