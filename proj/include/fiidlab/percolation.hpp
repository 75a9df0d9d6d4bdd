#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fiidlab/factors.hpp"
#include "fiidlab/graph.hpp"

namespace fiidlab {

struct DensityReport {
    std::string symbol;
    double density = 0.0;
    double conditional_avg_degree = 0.0;  // 2 * open-open edges / open vertices
    bool avg_degree_defined = false;      // false when the symbol is absent
    std::uint64_t open_count = 0;
    std::uint64_t open_open_edges = 0;
};

DensityReport density_report(const Graph& g, const Configuration& c, Symbol symbol);

struct ClusterStats {
    std::uint32_t cluster_id = 0;
    std::uint32_t size = 0;
    std::uint64_t internal_edges = 0;
    double avg_degree = 0.0;  // 2 * internal_edges / size
};

struct ClusterSummary {
    std::vector<ClusterStats> clusters;
    std::uint32_t largest_size = 0;
    std::map<std::uint32_t, std::uint32_t> size_histogram;
};

ClusterSummary cluster_stats(const Graph& g, const Configuration& c, Symbol symbol);

// Bookkeeping identity pieces, exact on any finite configuration:
//   d * density = density * cond_avg_degree + (1 - density) * d * kappa_hat
struct DegreeBookkeeping {
    double density = 0.0;
    double cond_avg_degree = 0.0;
    double kappa_hat = 0.0;  // open-neighbour fraction per half-edge at closed vertices
    bool defined = false;    // needs both open and closed vertices
};
DegreeBookkeeping degree_bookkeeping(const Graph& g, const Configuration& c, Symbol symbol);

struct PcSweepOptions {
    double tau = 0.05;                // giant-fraction threshold
    std::uint32_t min_cluster = 1000; // required largest original cluster
};

struct PcSweepResult {
    std::vector<double> p_grid;
    std::vector<double> mean_giant_fraction;
    std::vector<double> stderr_giant_fraction;
    double p_c_estimate = 0.0;
    double p_c_stderr = 0.0;
    bool crossed = false;       // mean curve exceeded tau somewhere
    bool isotonic_ok = true;    // mean curve non-decreasing
    std::uint32_t replicas = 0;
    std::uint32_t largest_original_cluster = 0;
};

// Bernoulli(p) site retention inside the symbol's clusters for every p in the
// grid; the largest retained subcluster is measured as a fraction of the
// largest original cluster. One coupled activation sweep per replica yields
// the whole curve. p_c is the tau-crossing of the mean curve, linearly
// interpolated between bracketing grid points.
PcSweepResult pc_sweep(const Graph& g, const Configuration& c, Symbol symbol,
                       const std::vector<double>& p_grid, std::uint32_t replicas,
                       std::uint64_t seed, const PcSweepOptions& opts = {});

struct MixedEdgeReport {
    double value = 0.0;
    bool defined = false;  // false when there are no within-cluster edges
    std::uint64_t mixed = 0;
    std::uint64_t internal = 0;
};

// Fraction of edges with both endpoints carrying `symbol` whose endpoints
// receive different colours under `colouring`.
MixedEdgeReport mixed_edge_density(const Graph& g, const Configuration& c, Symbol symbol,
                                   const Configuration& colouring);

} // namespace fiidlab
