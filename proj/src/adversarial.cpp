#include "fiidlab/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fiidlab/errors.hpp"
#include "fiidlab/rng.hpp"

namespace fiidlab {

namespace {

struct SwapState {
    const Graph& g;
    std::vector<std::uint32_t> half_edges_into;  // per vertex, targets currently in S
    std::vector<std::uint32_t> loops;            // self-loops per vertex
    std::vector<std::uint8_t> in_set;
    std::vector<Vertex> members, outsiders;
    std::vector<std::uint32_t> position;  // index in members/outsiders
    std::int64_t internal_twice = 0;      // 2 * internal edge count

    explicit SwapState(const Graph& gr)
        : g(gr), half_edges_into(gr.num_vertices(), 0), loops(gr.num_vertices(), 0),
          in_set(gr.num_vertices(), 0), position(gr.num_vertices(), 0) {
        for (Vertex v = 0; v < gr.num_vertices(); ++v) {
            std::uint32_t l = 0;
            for (std::uint32_t s = 0; s < gr.degree(v); ++s)
                if (gr.neighbour(v, s) == v) ++l;
            loops[v] = l / 2 * 2;  // self-loop contributes two half-edges
        }
    }

    void init(const std::vector<Vertex>& initial) {
        std::fill(half_edges_into.begin(), half_edges_into.end(), 0);
        std::fill(in_set.begin(), in_set.end(), 0);
        members.clear();
        outsiders.clear();
        internal_twice = 0;
        for (Vertex v : initial) in_set[v] = 1;
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            if (in_set[v]) {
                position[v] = static_cast<std::uint32_t>(members.size());
                members.push_back(v);
            } else {
                position[v] = static_cast<std::uint32_t>(outsiders.size());
                outsiders.push_back(v);
            }
        }
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            std::uint32_t cnt = 0;
            for (std::uint32_t s = 0; s < g.degree(v); ++s)
                if (in_set[g.neighbour(v, s)]) ++cnt;
            half_edges_into[v] = cnt;
            if (in_set[v]) internal_twice += cnt;
        }
    }

    // Change in 2*e(S) if u (inside) and w (outside) swap.
    std::int64_t swap_gain(Vertex u, Vertex w) const {
        std::uint32_t mult_uw = 0;
        for (std::uint32_t s = 0; s < g.degree(w); ++s)
            if (g.neighbour(w, s) == u) ++mult_uw;
        const std::int64_t lost = std::int64_t(half_edges_into[u]) - loops[u] / 2;
        const std::int64_t gained =
            std::int64_t(half_edges_into[w]) - mult_uw + loops[w] / 2;
        return 2 * (gained - lost);
    }

    void apply_swap(Vertex u, Vertex w) {
        // remove u
        in_set[u] = 0;
        internal_twice -= 2 * std::int64_t(half_edges_into[u]) - loops[u];
        for (std::uint32_t s = 0; s < g.degree(u); ++s) {
            const HalfEdge h = g.half_edge(u, s);
            --half_edges_into[g.target(h)];
        }
        // add w
        in_set[w] = 1;
        for (std::uint32_t s = 0; s < g.degree(w); ++s) {
            const HalfEdge h = g.half_edge(w, s);
            ++half_edges_into[g.target(h)];
        }
        internal_twice += 2 * std::int64_t(half_edges_into[w]) - loops[w];
        // membership lists
        const std::uint32_t pu = position[u], pw = position[w];
        members[pu] = w;
        outsiders[pw] = u;
        position[w] = pu;
        position[u] = pw;
    }
};

} // namespace

AdversarialResult adversarial_subgraph_search(const Graph& g, double eps,
                                              const AnnealSchedule& schedule,
                                              std::uint64_t seed) {
    const std::uint32_t n = g.num_vertices();
    if (!(eps > 0.0 && eps <= 1.0))
        throw invalid_parameter("adversarial search: eps must lie in (0,1]");
    const std::uint32_t m = static_cast<std::uint32_t>(std::floor(eps * n));
    if (m == 0) throw invalid_parameter("adversarial search: density budget selects no vertices");

    AdversarialResult best;
    best.set_size = m;
    best.density = double(m) / double(n);
    std::int64_t best_internal_twice = -1;
    std::vector<Vertex> best_members;

    SwapState state(g);
    std::vector<Vertex> initial(n);
    for (Vertex v = 0; v < n; ++v) initial[v] = v;

    for (std::uint32_t restart = 0; restart < std::max(1u, schedule.restarts); ++restart) {
        rng::Stream64 stream(seed, rng::substream(rng::kAnneal, restart));
        stream.shuffle(initial.data(), initial.size());
        state.init(std::vector<Vertex>(initial.begin(), initial.begin() + m));
        if (state.internal_twice > best_internal_twice) {
            best_internal_twice = state.internal_twice;
            best_members = state.members;
        }
        if (m == n) break;  // S = V, nothing to swap
        double temperature = schedule.t0;
        for (std::uint32_t it = 0; it < schedule.iterations; ++it) {
            const Vertex u = state.members[stream.next_below(m)];
            const Vertex w = state.outsiders[stream.next_below(n - m)];
            const std::int64_t gain = state.swap_gain(u, w);
            bool accept = gain >= 0;
            if (!accept && temperature > 1e-12)
                accept = stream.next_unit() < std::exp(double(gain) / temperature);
            if (accept) {
                state.apply_swap(u, w);
                if (state.internal_twice > best_internal_twice) {
                    best_internal_twice = state.internal_twice;
                    best_members = state.members;
                }
            }
            temperature *= schedule.alpha;
        }
    }

    best.best_set = VertexSet::of(n, best_members);
    best.internal_edges = static_cast<std::uint64_t>(best_internal_twice / 2);
    best.avg_degree = double(best_internal_twice) / double(m);
    return best;
}

} // namespace fiidlab
