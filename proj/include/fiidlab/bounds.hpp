#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fiidlab {

// Bookkeeping rates on a d-regular host: with open density eps and
// conditional average degree 2+delta, the open-neighbour fraction per
// half-edge seen from closed vertices is forced to
//     (d-2-delta) * eps / (d * (1-eps)).
// Throws invalid_parameter when the parameters admit no such process
// (result outside [0,1]).
double open_rate_at_closed(double eps, double delta, std::uint32_t d);

// Dense chain: with closed density eps and degree deficit delta among open
// vertices, the closed-neighbour fraction at closed vertices is forced to
// 1 + delta - delta/eps. Same out-of-range behaviour.
double closed_rate_at_closed(double eps, double delta);

struct FeasibilityCheck {
    double eps = 0.0, delta = 0.0, gamma = 0.0;
    std::uint32_t d = 0;
    double lhs_bits = 0.0, rhs_bits = 0.0;
    bool feasible = false;     // lhs <= rhs
    bool domain_ok = true;     // false when the bookkeeping rate leaves [0,1]
    double margin = 0.0;       // rhs - lhs
};

// Sparse chain ("a sparse subgraph cannot be too thick"): density eps with
// conditional average degree 2+delta on a d-regular host must satisfy
//     (d-2) h(eps) <= eps*d + d*h(open_rate_at_closed).
// Infeasible parameters are impossible for any invariant process.
FeasibilityCheck sparse_feasible(double eps, double delta, std::uint32_t d);

// Dense chain: closed density eps with open-degree deficit delta on a host
// with external vertex Cheeger constant gamma must satisfy
//     gamma * h(eps) <= d * ((1-eps) h(delta) + eps h(closed_rate_at_closed)).
// Out-of-domain eps yields feasible=false with domain_ok=false.
FeasibilityCheck dense_feasible(double eps, double delta, double gamma, std::uint32_t d);

enum class BoundStatus {
    ok,                   // bracketed crossing, bisected to tol
    no_infeasible_region, // feasible through the scanned end of the domain:
                          // sparse chain -> smallest feasible density is 0,
                          // dense chain -> feasible up to the domain top
    no_feasible_region,   // nothing feasible in the domain
};

struct BoundPoint {
    double value = 0.0;
    BoundStatus status = BoundStatus::ok;
    std::vector<double> sign_changes;  // all crossings seen on the scan grid
    double tol = 0.0;
};

// Smallest feasible density for the sparse chain: scan (log-spaced well below
// double-representable thresholds plus a linear grid), record every sign
// change, bisect the first one.
BoundPoint sparse_min_density(std::uint32_t d, double delta, double tol);

// Largest feasible closed density for the dense chain over the kappa-domain
// (delta/(1+delta), 1); "density >= 1 - value" is the guaranteed conclusion.
BoundPoint dense_max_closed_density(double delta, double gamma, std::uint32_t d, double tol);

// Guaranteed subgraph density on an edge expander: a subgraph with average
// degree at least (1-delta)*d in a graph with edge Cheeger constant h_edge
// has density at least 1 - delta*d/h_edge (clipped at 0).
double expander_density_bound(double delta, std::uint32_t d, double h_edge);

struct BoundCurve {
    std::uint32_t d = 0;
    bool dense_chain = false;
    double gamma = 0.0;  // dense chain only
    double tol = 0.0;
    std::vector<double> delta_grid;
    std::vector<BoundPoint> points;

    // CSV rows "delta,c,tol,sign_changes".
    void write_csv(std::ostream& os) const;
};

BoundCurve sparse_bound_curve(std::uint32_t d, const std::vector<double>& delta_grid, double tol);
BoundCurve dense_bound_curve(std::uint32_t d, double gamma,
                             const std::vector<double>& delta_grid, double tol);

} // namespace fiidlab
