#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fiidlab/factors.hpp"
#include "fiidlab/graph.hpp"

namespace fiidlab {

// Empirical tally of ordered (root, neighbour_1..d) symbol tuples, neighbours
// in half-edge slot order. Mergeable; merge order never matters.
struct StarSample {
    std::uint32_t d = 0;
    std::uint32_t alphabet_size = 0;
    std::uint64_t total = 0;
    std::unordered_map<std::uint64_t, std::uint64_t> counts;

    // key = root + a * nbr_1 + a^2 * nbr_2 + ...
    static std::uint64_t encode(const Symbol* tuple, std::uint32_t len, std::uint32_t a);
    void add(const Symbol* tuple, std::uint32_t len);
    void merge(const StarSample& other);
};

// Tally stars at the given vertices (host must be regular).
StarSample collect_stars(const Graph& g, const Configuration& c, const VertexSet& where);

// Vertices whose radius-r ball is a tree: the girth-respecting region.
VertexSet tree_like_vertices(const Graph& g, std::uint32_t radius);

struct StarEntropyReport {
    std::uint64_t total = 0;
    double star_entropy = 0.0;           // H(X_S), ordered tuples
    double root_entropy = 0.0;           // H(X_o)
    double rest_given_root = 0.0;        // H(X_S) - H(X_o), chain rule
    double unordered_star_entropy = 0.0; // multiset tuples, reported only
    double ratio = 0.0;                  // star / root (0 when root entropy is 0)
    double threshold_factor = 0.0;
    double margin = 0.0;                 // star - threshold_factor * root
    double se_star = 0.0, se_root = 0.0, se_margin = 0.0;  // bootstrap
    // binary-alphabet extras for the one-by-one revealing bound:
    bool binary = false;
    double rest_given_closed_root = 0.0;  // H(X_{S\o} | X_o = 0)
    double kappa_hat = 0.0;               // mean open-neighbour fraction given closed root
    double se_rest_given_closed = 0.0;
};

// Plug-in entropies with Poisson-bootstrap standard errors over resampled
// tallies. threshold_factor is d-1 for tree factors, 1+gamma in general.
StarEntropyReport star_entropy_check(const StarSample& s, double threshold_factor,
                                     std::uint32_t bootstrap_rounds, std::uint64_t seed);

} // namespace fiidlab
