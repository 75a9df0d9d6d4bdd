#include "fiidlab/expansion.hpp"

#include <algorithm>
#include <bit>

#include "fiidlab/errors.hpp"

namespace fiidlab {

namespace {

struct Enumerator {
    const Graph& g;
    std::uint32_t max_size;
    std::uint64_t cap;
    ExpansionResult out;
    std::vector<std::uint8_t> in_set, forbidden, seen;
    std::vector<Vertex> set;

    Enumerator(const Graph& gr, std::uint32_t k, std::uint64_t c)
        : g(gr), max_size(k), cap(c),
          in_set(gr.num_vertices(), 0), forbidden(gr.num_vertices(), 0),
          seen(gr.num_vertices(), 0) {}

    void consider() {
        ++out.enumerated;
        std::uint64_t ext = 0;
        for (Vertex v : set) {
            for (std::uint32_t s = 0; s < g.degree(v); ++s) {
                const Vertex w = g.neighbour(v, s);
                if (!in_set[w] && !seen[w]) {
                    seen[w] = 1;
                    ++ext;
                }
            }
        }
        for (Vertex v : set)
            for (std::uint32_t s = 0; s < g.degree(v); ++s) seen[g.neighbour(v, s)] = 0;
        const double ratio =
            static_cast<double>(set.size() + ext) / static_cast<double>(set.size());
        if (out.argmin.empty() || ratio < out.min_ratio) {
            out.min_ratio = ratio;
            out.argmin = set;
            std::sort(out.argmin.begin(), out.argmin.end());
        }
    }

    // Enumerates every connected superset of `set` (within vertices > base and
    // outside `forbidden`) exactly once. `cands` holds frontier vertices.
    bool grow(Vertex base, std::vector<Vertex> cands) {
        consider();
        if (out.enumerated >= cap) return false;
        if (set.size() == max_size) return true;
        std::vector<Vertex> locally_forbidden;
        while (!cands.empty()) {
            const Vertex v = cands.back();
            cands.pop_back();
            in_set[v] = 1;  // before building the frontier, so self-loops stay out
            set.push_back(v);
            std::vector<Vertex> next = cands;
            for (std::uint32_t s = 0; s < g.degree(v); ++s) {
                const Vertex w = g.neighbour(v, s);
                if (w <= base || in_set[w] || forbidden[w]) continue;
                if (std::find(next.begin(), next.end(), w) != next.end()) continue;
                next.push_back(w);
            }
            const bool ok = grow(base, std::move(next));
            set.pop_back();
            in_set[v] = 0;
            if (!ok) {
                for (Vertex u : locally_forbidden) forbidden[u] = 0;
                return false;
            }
            forbidden[v] = 1;
            locally_forbidden.push_back(v);
        }
        for (Vertex u : locally_forbidden) forbidden[u] = 0;
        return true;
    }
};

} // namespace

ExpansionResult vertex_expansion_exhaustive(const Graph& g, std::uint32_t max_size,
                                            std::uint64_t cap) {
    if (max_size == 0) throw invalid_parameter("vertex expansion: max_size must be >= 1");
    Enumerator e(g, max_size, cap);
    for (Vertex s = 0; s < g.num_vertices(); ++s) {
        std::vector<Vertex> cands;
        for (std::uint32_t slot = 0; slot < g.degree(s); ++slot) {
            const Vertex w = g.neighbour(s, slot);
            if (w > s && std::find(cands.begin(), cands.end(), w) == cands.end())
                cands.push_back(w);
        }
        e.in_set[s] = 1;
        e.set.push_back(s);
        const bool ok = e.grow(s, std::move(cands));
        e.set.pop_back();
        e.in_set[s] = 0;
        if (!ok) {
            e.out.capped = true;
            break;
        }
    }
    return e.out;
}

ExpansionResult vertex_expansion_unrestricted(const Graph& g, std::uint32_t max_size,
                                              std::uint64_t cap) {
    const std::uint32_t n = g.num_vertices();
    if (n > 25) throw invalid_parameter("unrestricted expansion scan needs n <= 25");
    if (max_size == 0) throw invalid_parameter("vertex expansion: max_size must be >= 1");
    // adjacency + closed neighbourhood masks
    std::vector<std::uint32_t> reach(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        reach[v] = 1u << v;
        for (std::uint32_t s = 0; s < g.degree(v); ++s) reach[v] |= 1u << g.neighbour(v, s);
    }
    ExpansionResult out;
    const std::uint32_t full = n == 32 ? 0xFFFFFFFFu : ((1u << n) - 1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const int k = std::popcount(mask);
        if (k > static_cast<int>(max_size)) continue;
        if (++out.enumerated > cap) {
            out.capped = true;
            break;
        }
        std::uint32_t closure = 0;
        for (std::uint32_t m = mask; m; m &= m - 1)
            closure |= reach[static_cast<std::uint32_t>(std::countr_zero(m))];
        const double ratio = static_cast<double>(std::popcount(closure)) / k;
        if (out.argmin.empty() || ratio < out.min_ratio) {
            out.min_ratio = ratio;
            out.argmin.clear();
            for (std::uint32_t m = mask; m; m &= m - 1)
                out.argmin.push_back(static_cast<Vertex>(std::countr_zero(m)));
        }
    }
    return out;
}

BetaWeightReport beta_weight(const Graph& g, std::uint32_t max_size, std::uint64_t cap) {
    BetaWeightReport r;
    r.connected = vertex_expansion_exhaustive(g, max_size, cap);
    if (g.num_vertices() <= 20) r.unrestricted = vertex_expansion_unrestricted(g, max_size, cap);
    r.tree_reference = g.is_regular() ? static_cast<double>(g.degree()) - 1.0 : 0.0;
    return r;
}

double edge_cheeger_exhaustive(const Graph& g) {
    const std::uint32_t n = g.num_vertices();
    if (n < 2 || n > 25) throw invalid_parameter("exhaustive Cheeger scan needs 2 <= n <= 25");
    double best = -1.0;
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        const int k = std::popcount(mask);
        if (2 * k > static_cast<int>(n)) continue;
        std::uint64_t cut = 0;
        for (std::uint32_t m = mask; m; m &= m - 1) {
            const Vertex v = static_cast<Vertex>(std::countr_zero(m));
            for (std::uint32_t s = 0; s < g.degree(v); ++s) {
                const Vertex w = g.neighbour(v, s);
                if (!((mask >> w) & 1)) ++cut;
            }
        }
        const double ratio = static_cast<double>(cut) / k;
        if (best < 0 || ratio < best) best = ratio;
    }
    return best;
}

} // namespace fiidlab
