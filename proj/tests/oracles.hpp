#pragma once

// Independent reference implementations used only by tests. These stay
// deliberately naive (BFS, bitmask enumeration, series inversion) so they do
// not share code paths with the library.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "fiidlab/graph.hpp"

namespace oracle {

using fiidlab::Graph;
using fiidlab::Vertex;

// BFS connected components of the induced subgraph on `open`.
inline std::vector<std::vector<Vertex>> bfs_components(const Graph& g,
                                                       const std::vector<bool>& open) {
    const std::uint32_t n = g.num_vertices();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<Vertex>> comps;
    for (Vertex s = 0; s < n; ++s) {
        if (!open[s] || seen[s]) continue;
        std::vector<Vertex> comp;
        std::queue<Vertex> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            const Vertex v = q.front();
            q.pop();
            comp.push_back(v);
            for (std::uint32_t slot = 0; slot < g.degree(v); ++slot) {
                const Vertex w = g.neighbour(v, slot);
                if (open[w] && !seen[w]) {
                    seen[w] = true;
                    q.push(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

// Edges with both endpoints inside `members` (self-loops once).
inline std::uint64_t recount_internal_edges(const Graph& g,
                                            const std::vector<Vertex>& members) {
    std::vector<bool> in(g.num_vertices(), false);
    for (Vertex v : members) in[v] = true;
    std::uint64_t count = 0;
    for (fiidlab::HalfEdge h = 0; h < g.num_half_edges(); ++h) {
        if (h >= g.partner(h)) continue;
        if (in[g.owner(h)] && in[g.target(h)]) ++count;
    }
    return count;
}

// Exhaustive minimum of |W ∪ ext(W)| / |W| over connected sets of size <= k.
inline double connected_expansion_bruteforce(const Graph& g, std::uint32_t k) {
    const std::uint32_t n = g.num_vertices();
    double best = 1e18;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const int size = std::popcount(mask);
        if (size > static_cast<int>(k)) continue;
        // connectivity of the induced set
        std::uint32_t start = std::countr_zero(mask);
        std::uint32_t reached = 1u << start;
        std::vector<Vertex> stack{start};
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            for (std::uint32_t s = 0; s < g.degree(v); ++s) {
                const Vertex w = g.neighbour(v, s);
                const std::uint32_t bit = 1u << w;
                if ((mask & bit) && !(reached & bit)) {
                    reached |= bit;
                    stack.push_back(w);
                }
            }
        }
        if (reached != mask) continue;
        std::uint32_t closure = mask;
        for (std::uint32_t m = mask; m; m &= m - 1) {
            const Vertex v = std::countr_zero(m);
            for (std::uint32_t s = 0; s < g.degree(v); ++s) closure |= 1u << g.neighbour(v, s);
        }
        best = std::min(best, double(std::popcount(closure)) / size);
    }
    return best;
}

// Densest subset of given size, exhaustive; returns max average degree.
inline double densest_subset_bruteforce(const Graph& g, std::uint32_t size) {
    const std::uint32_t n = g.num_vertices();
    std::vector<std::uint32_t> nbr_mask(n, 0);
    std::vector<std::uint32_t> loop_count(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (std::uint32_t s = 0; s < g.degree(v); ++s) {
            const Vertex w = g.neighbour(v, s);
            if (w == v)
                ++loop_count[v];
            else
                nbr_mask[v] |= 1u << w;
        }
    double best = 0.0;
    // iterate subsets of fixed popcount via Gosper's hack
    std::uint64_t mask = (1ull << size) - 1;
    const std::uint64_t limit = 1ull << n;
    while (mask < limit) {
        std::uint64_t internal2 = 0;
        for (std::uint64_t m = mask; m; m &= m - 1) {
            const Vertex v = static_cast<Vertex>(std::countr_zero(m));
            internal2 += std::popcount(nbr_mask[v] & static_cast<std::uint32_t>(mask)) +
                         loop_count[v];
        }
        best = std::max(best, double(internal2) / size);
        const std::uint64_t c = mask & -mask, r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    return best;
}

// Kolmogorov distribution tail Q(x) = 2 sum (-1)^{k-1} exp(-2 k^2 x^2);
// inverts for the alpha-critical value of D_n (asymptotic form).
inline double ks_critical_value(double alpha, std::uint64_t n) {
    auto tail = [](double x) {
        double s = 0.0;
        for (int k = 1; k <= 200; ++k) {
            const double term = std::exp(-2.0 * k * k * x * x);
            s += (k % 2 == 1 ? term : -term);
            if (term < 1e-18) break;
        }
        return 2.0 * s;
    };
    double lo = 0.2, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (tail(mid) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi) / std::sqrt(double(n));
}

// Exact expected self-loop count of the uniform pairing model by recursive
// enumeration of all perfect matchings of n*d half-edges (small nd only).
inline double expected_self_loops_enumerated(std::uint32_t n, std::uint32_t d) {
    const std::uint32_t m = n * d;
    std::vector<int> partner(m, -1);
    double loops_total = 0.0;
    std::uint64_t matchings = 0;
    auto owner = [d](std::uint32_t h) { return h / d; };
    std::function<void()> rec = [&]() {
        std::uint32_t first = m;
        for (std::uint32_t h = 0; h < m; ++h)
            if (partner[h] < 0) {
                first = h;
                break;
            }
        if (first == m) {
            ++matchings;
            std::uint32_t loops = 0;
            for (std::uint32_t h = 0; h < m; ++h)
                if (partner[h] > int(h) && owner(h) == owner(partner[h])) ++loops;
            loops_total += loops;
            return;
        }
        for (std::uint32_t h2 = first + 1; h2 < m; ++h2) {
            if (partner[h2] >= 0) continue;
            partner[first] = int(h2);
            partner[h2] = int(first);
            rec();
            partner[first] = -1;
            partner[h2] = -1;
        }
    };
    rec();
    return loops_total / double(matchings);
}

// Second, unrelated RNG path for Monte Carlo cross-checks.
inline Graph configuration_model_mt19937(std::uint32_t n, std::uint32_t d,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<fiidlab::HalfEdge> ids(std::size_t(n) * d);
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<fiidlab::HalfEdge>(i);
    for (std::size_t i = ids.size(); i > 1; --i) {
        const std::size_t j = rng() % i;  // tiny modulo bias, irrelevant here
        std::swap(ids[i - 1], ids[j]);
    }
    std::vector<fiidlab::HalfEdge> partner(ids.size());
    for (std::size_t i = 0; i < ids.size(); i += 2) {
        partner[ids[i]] = ids[i + 1];
        partner[ids[i + 1]] = ids[i];
    }
    return Graph(n, d, std::move(partner));
}

// Heawood graph: 3-regular, n = 14, girth 6 (LCF [5,-5]^7).
inline Graph make_heawood() {
    fiidlab::GraphBuilder b(14);
    for (Vertex v = 0; v < 14; ++v) b.add_edge(v, (v + 1) % 14);
    for (Vertex v = 0; v < 14; v += 2) b.add_edge(v, (v + 5) % 14);
    return b.build();
}

// Interior-path caterpillar: a k-vertex path whose vertices are padded with
// leaves to degree d; the tree a path witness lives in.
inline Graph make_caterpillar(std::uint32_t k, std::uint32_t d) {
    const std::uint32_t extras_mid = d - 2, extras_end = d - 1;
    const std::uint32_t n = k + 2 * extras_end + (k > 2 ? (k - 2) * extras_mid : 0);
    fiidlab::GraphBuilder b(n);
    std::uint32_t next = k;
    for (Vertex v = 0; v + 1 < k; ++v) b.add_edge(v, v + 1);
    for (Vertex v = 0; v < k; ++v) {
        const std::uint32_t extras = (v == 0 || v == k - 1) ? extras_end : extras_mid;
        for (std::uint32_t i = 0; i < extras; ++i) b.add_edge(v, next++);
    }
    return b.build();
}

} // namespace oracle
