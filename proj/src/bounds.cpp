#include "fiidlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "fiidlab/entropy.hpp"
#include "fiidlab/errors.hpp"

namespace fiidlab {

double open_rate_at_closed(double eps, double delta, std::uint32_t d) {
    if (!(eps > 0.0 && eps < 1.0))
        throw invalid_parameter("open_rate_at_closed: eps must lie in (0,1)");
    if (d < 3) throw invalid_parameter("open_rate_at_closed: d must be >= 3");
    if (!(delta >= 0.0 && delta <= double(d) - 2.0))
        throw invalid_parameter("open_rate_at_closed: delta must lie in [0, d-2]");
    const double kappa = (double(d) - 2.0 - delta) * eps / (double(d) * (1.0 - eps));
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw invalid_parameter("open_rate_at_closed: inconsistent parameters (rate outside [0,1])");
    return kappa;
}

double closed_rate_at_closed(double eps, double delta) {
    if (!(eps > 0.0 && eps < 1.0))
        throw invalid_parameter("closed_rate_at_closed: eps must lie in (0,1)");
    if (!(delta >= 0.0)) throw invalid_parameter("closed_rate_at_closed: delta must be >= 0");
    const double kappa = 1.0 + delta - delta / eps;
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw invalid_parameter(
            "closed_rate_at_closed: inconsistent parameters (no such process)");
    return kappa;
}

FeasibilityCheck sparse_feasible(double eps, double delta, std::uint32_t d) {
    FeasibilityCheck r;
    r.eps = eps;
    r.delta = delta;
    r.d = d;
    const double kappa = open_rate_at_closed(eps, delta, d);  // may throw
    r.lhs_bits = (double(d) - 2.0) * binary_entropy(eps);
    r.rhs_bits = eps * d + d * binary_entropy(kappa);
    r.margin = r.rhs_bits - r.lhs_bits;
    r.feasible = r.margin >= 0.0;
    return r;
}

FeasibilityCheck dense_feasible(double eps, double delta, double gamma, std::uint32_t d) {
    if (!(gamma > 0.0)) throw invalid_parameter("dense_feasible: gamma must be positive");
    if (d < 3) throw invalid_parameter("dense_feasible: d must be >= 3");
    FeasibilityCheck r;
    r.eps = eps;
    r.delta = delta;
    r.gamma = gamma;
    r.d = d;
    double kappa = 0.0;
    try {
        kappa = closed_rate_at_closed(eps, delta);
    } catch (const invalid_parameter&) {
        r.domain_ok = false;
        r.feasible = false;
        return r;
    }
    r.lhs_bits = gamma * binary_entropy(eps);
    r.rhs_bits = d * ((1.0 - eps) * binary_entropy(delta) + eps * binary_entropy(kappa));
    r.margin = r.rhs_bits - r.lhs_bits;
    r.feasible = r.margin >= 0.0;
    return r;
}

namespace {

// Composite scan grid on (lo, hi): log-spaced from lo, log-spaced into hi,
// and a linear fill. Sorted, deduplicated, strictly inside the interval.
std::vector<double> composite_grid(double lo, double hi, std::size_t log_points,
                                   std::size_t lin_points) {
    std::vector<double> g;
    const double lo_floor = std::max(lo, 1e-300);
    if (lo_floor < hi) {
        const double la = std::log(lo_floor), lb = std::log(hi);
        for (std::size_t i = 1; i + 1 <= log_points; ++i) {
            const double t = la + (lb - la) * double(i) / double(log_points);
            g.push_back(std::exp(t));
        }
    }
    // mirrored log grid accumulating toward hi
    const double span = hi - lo;
    if (span > 0) {
        for (double step = span * 0.5; step > 1e-14 * std::max(1.0, hi); step *= 0.5)
            g.push_back(hi - step);
    }
    for (std::size_t i = 1; i + 1 <= lin_points; ++i)
        g.push_back(lo + span * double(i) / double(lin_points));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    std::erase_if(g, [&](double x) { return !(x > lo && x < hi); });
    return g;
}

} // namespace

BoundPoint sparse_min_density(std::uint32_t d, double delta, double tol) {
    if (!(tol > 0.0)) throw invalid_parameter("sparse_min_density: tol must be positive");
    if (d < 3) throw invalid_parameter("sparse_min_density: d must be >= 3");
    if (!(delta > 0.0 && delta <= double(d) - 2.0))
        throw invalid_parameter("sparse_min_density: delta must lie in (0, d-2]");
    // kappa stays within [0,1] for eps < d/(2d-2-delta)
    const double eps_max = std::min(1.0 - 1e-12, double(d) / (2.0 * d - 2.0 - delta));
    auto margin = [&](double eps) { return sparse_feasible(eps, delta, d).margin; };

    BoundPoint out;
    out.tol = tol;
    const auto grid = composite_grid(1e-300, eps_max, 4000, 2000);
    double prev = margin(grid.front());
    double first_lo = 0.0, first_hi = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = margin(grid[i]);
        if ((prev < 0.0) != (cur < 0.0)) {
            out.sign_changes.push_back(grid[i]);
            if (first_hi == 0.0 && prev < 0.0) {
                first_lo = grid[i - 1];
                first_hi = grid[i];
            }
        }
        prev = cur;
    }
    if (out.sign_changes.empty()) {
        if (margin(grid.front()) >= 0.0) {
            out.status = BoundStatus::no_infeasible_region;
            out.value = 0.0;
        } else {
            out.status = BoundStatus::no_feasible_region;
            out.value = eps_max;
        }
        return out;
    }
    if (first_hi == 0.0) {
        // curve starts feasible; the smallest feasible density is effectively 0
        out.status = BoundStatus::no_infeasible_region;
        out.value = 0.0;
        return out;
    }
    double lo = first_lo, hi = first_hi;  // margin(lo) < 0 <= margin(hi)
    while (hi - lo > tol && hi > lo * (1.0 + 1e-12)) {
        const double mid = (lo + hi <= 2e-8) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        if (margin(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    out.value = hi;
    out.status = BoundStatus::ok;
    return out;
}

BoundPoint dense_max_closed_density(double delta, double gamma, std::uint32_t d, double tol) {
    if (!(tol > 0.0)) throw invalid_parameter("dense_max_closed_density: tol must be positive");
    if (!(gamma > 0.0)) throw invalid_parameter("dense_max_closed_density: gamma must be positive");
    if (!(delta > 0.0)) throw invalid_parameter("dense_max_closed_density: delta must be positive");
    if (d < 3) throw invalid_parameter("dense_max_closed_density: d must be >= 3");
    const double eps_min = delta / (1.0 + delta);
    const double eps_hi = 1.0 - 1e-14;
    auto margin = [&](double eps) {
        const FeasibilityCheck c = dense_feasible(eps, delta, gamma, d);
        return c.domain_ok ? c.margin : -1.0;
    };

    BoundPoint out;
    out.tol = tol;
    const auto grid = composite_grid(eps_min, eps_hi, 3000, 3000);
    double prev = margin(grid.front());
    double last_lo = 0.0, last_hi = 0.0;
    bool any_feasible = prev >= 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = margin(grid[i]);
        if (cur >= 0.0) any_feasible = true;
        if ((prev < 0.0) != (cur < 0.0)) {
            out.sign_changes.push_back(grid[i]);
            if (prev >= 0.0 && cur < 0.0) {
                last_lo = grid[i - 1];  // feasible
                last_hi = grid[i];      // infeasible
            }
        }
        prev = cur;
    }
    if (!any_feasible) {
        out.status = BoundStatus::no_feasible_region;
        out.value = eps_min;
        return out;
    }
    if (last_hi == 0.0 || margin(grid.back()) >= 0.0) {
        // feasible all the way to the top of the domain
        out.status = BoundStatus::no_infeasible_region;
        out.value = grid.back();
        return out;
    }
    double lo = last_lo, hi = last_hi;  // margin(lo) >= 0 > margin(hi)
    while (hi - lo > tol && (1.0 - lo) > (1.0 - hi) * (1.0 + 1e-12)) {
        const double mid = 0.5 * (lo + hi);
        if (margin(mid) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    out.value = lo;
    out.status = BoundStatus::ok;
    return out;
}

double expander_density_bound(double delta, std::uint32_t d, double h_edge) {
    if (!(h_edge > 0.0)) throw invalid_parameter("expander_density_bound: h_edge must be positive");
    if (!(delta >= 0.0)) throw invalid_parameter("expander_density_bound: delta must be >= 0");
    if (d < 1) throw invalid_parameter("expander_density_bound: d must be >= 1");
    return std::max(0.0, 1.0 - delta * double(d) / h_edge);
}

void BoundCurve::write_csv(std::ostream& os) const {
    os << "delta,c,tol,sign_changes\n";
    char buf[128];
    for (std::size_t i = 0; i < delta_grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%zu\n", delta_grid[i],
                      points[i].value, points[i].tol, points[i].sign_changes.size());
        os << buf;
    }
}

BoundCurve sparse_bound_curve(std::uint32_t d, const std::vector<double>& delta_grid,
                              double tol) {
    BoundCurve c;
    c.d = d;
    c.dense_chain = false;
    c.tol = tol;
    c.delta_grid = delta_grid;
    for (double delta : delta_grid) c.points.push_back(sparse_min_density(d, delta, tol));
    return c;
}

BoundCurve dense_bound_curve(std::uint32_t d, double gamma,
                             const std::vector<double>& delta_grid, double tol) {
    BoundCurve c;
    c.d = d;
    c.dense_chain = true;
    c.gamma = gamma;
    c.tol = tol;
    c.delta_grid = delta_grid;
    for (double delta : delta_grid)
        c.points.push_back(dense_max_closed_density(delta, gamma, d, tol));
    return c;
}

} // namespace fiidlab
