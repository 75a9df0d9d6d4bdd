#include "fiidlab/ball.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>
#include <unordered_map>

#include "fiidlab/errors.hpp"

namespace fiidlab {

namespace {

RootedBall build_ball(const Graph& g, Vertex v, std::uint32_t r,
                      const double* labels) {
    if (v >= g.num_vertices()) throw invalid_parameter("ball: vertex out of range");
    RootedBall b;
    b.radius = r;
    std::unordered_map<Vertex, std::uint32_t> local;
    std::vector<Vertex> order;
    local.emplace(v, 0);
    order.push_back(v);
    b.dist.push_back(0);
    std::size_t head = 0;
    while (head < order.size()) {
        const Vertex x = order[head];
        const std::uint32_t dx = b.dist[head];
        ++head;
        if (dx == r) continue;
        for (std::uint32_t s = 0; s < g.degree(x); ++s) {
            const Vertex y = g.neighbour(x, s);
            if (local.emplace(y, static_cast<std::uint32_t>(order.size())).second) {
                order.push_back(y);
                b.dist.push_back(dx + 1);
            }
        }
    }
    b.num_vertices = static_cast<std::uint32_t>(order.size());
    b.global_ids = order;
    // induced edges, once per parallel edge
    for (std::uint32_t lu = 0; lu < b.num_vertices; ++lu) {
        const Vertex u = order[lu];
        for (std::uint32_t s = 0; s < g.degree(u); ++s) {
            const HalfEdge h = g.half_edge(u, s);
            if (h >= g.partner(h)) continue;
            const Vertex w = g.target(h);
            auto it = local.find(w);
            if (it == local.end()) continue;
            const std::uint32_t lw = it->second;
            b.edges.emplace_back(std::min(lu, lw), std::max(lu, lw));
        }
    }
    std::sort(b.edges.begin(), b.edges.end());
    if (labels) {
        b.labels.resize(b.num_vertices);
        for (std::uint32_t i = 0; i < b.num_vertices; ++i) b.labels[i] = labels[order[i]];
    }
    return b;
}

// --- canonical form via refinement + individualization ---------------------

struct Canon {
    const RootedBall& ball;
    std::vector<std::vector<std::uint32_t>> adj;  // with repeats; self-loop twice
    std::uint64_t nodes = 0;
    static constexpr std::uint64_t kNodeCap = 4'000'000;

    explicit Canon(const RootedBall& b) : ball(b), adj(b.num_vertices) {
        for (auto [u, v] : b.edges) {
            adj[u].push_back(v);
            if (u == v)
                adj[u].push_back(v);
            else
                adj[v].push_back(u);
        }
    }

    // Refine to the coarsest stable colouring not coarser than `colour`.
    // Colour ids are ranks of invariant signatures, so they are themselves
    // isomorphism-invariant.
    void refine(std::vector<std::uint32_t>& colour) const {
        const std::uint32_t n = ball.num_vertices;
        std::vector<std::vector<std::uint32_t>> sig(n);
        std::uint32_t classes = 0;
        {
            std::vector<std::uint32_t> vals(colour);
            std::sort(vals.begin(), vals.end());
            classes = static_cast<std::uint32_t>(
                std::unique(vals.begin(), vals.end()) - vals.begin());
        }
        while (true) {
            for (std::uint32_t v = 0; v < n; ++v) {
                auto& s = sig[v];
                s.clear();
                s.push_back(colour[v]);
                for (auto w : adj[v]) s.push_back(colour[w]);
                std::sort(s.begin() + 1, s.end());
            }
            std::vector<std::uint32_t> idx(n);
            for (std::uint32_t v = 0; v < n; ++v) idx[v] = v;
            std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
                return sig[a] < sig[b];
            });
            std::vector<std::uint32_t> next(n);
            std::uint32_t nc = 0;
            next[idx[0]] = 0;
            for (std::uint32_t i = 1; i < n; ++i) {
                if (sig[idx[i]] != sig[idx[i - 1]]) ++nc;
                next[idx[i]] = nc;
            }
            ++nc;
            colour.swap(next);
            if (nc == classes) return;
            classes = nc;
        }
    }

    std::string encode(const std::vector<std::uint32_t>& colour) const {
        // colour is discrete here: colour[v] is the canonical index of v.
        const std::uint32_t n = ball.num_vertices;
        std::string out;
        out.reserve(32 + 40 * n);
        char buf[64];
        std::snprintf(buf, sizeof buf, "n%u r%u|", n, ball.radius);
        out += buf;
        std::vector<std::uint32_t> inv(n);
        for (std::uint32_t v = 0; v < n; ++v) inv[colour[v]] = v;
        for (std::uint32_t i = 0; i < n; ++i) {
            const std::uint32_t v = inv[i];
            std::snprintf(buf, sizeof buf, "d%u", ball.dist[v]);
            out += buf;
            if (ball.has_labels()) {
                std::snprintf(buf, sizeof buf, "L%016llx",
                              static_cast<unsigned long long>(
                                  std::bit_cast<std::uint64_t>(ball.labels[v])));
                out += buf;
            }
            out += ';';
        }
        std::vector<std::pair<std::uint32_t, std::uint32_t>> es;
        es.reserve(ball.edges.size());
        for (auto [u, v] : ball.edges) {
            const std::uint32_t cu = colour[u], cv = colour[v];
            es.emplace_back(std::min(cu, cv), std::max(cu, cv));
        }
        std::sort(es.begin(), es.end());
        for (auto [u, v] : es) {
            std::snprintf(buf, sizeof buf, "%u-%u;", u, v);
            out += buf;
        }
        return out;
    }

    void search(std::vector<std::uint32_t> colour, std::string& best) {
        if (++nodes > kNodeCap)
            throw convergence_error("canonical form search exceeded node cap",
                                    0.0, static_cast<int>(kNodeCap));
        refine(colour);
        const std::uint32_t n = ball.num_vertices;
        // first non-singleton cell, by colour id
        std::vector<std::uint32_t> count(n, 0);
        for (auto c : colour) ++count[c];
        std::uint32_t cell = n;
        for (std::uint32_t c = 0; c < n; ++c)
            if (count[c] > 1) { cell = c; break; }
        if (cell == n) {
            std::string enc = encode(colour);
            if (best.empty() || enc < best) best.swap(enc);
            return;
        }
        for (std::uint32_t v = 0; v < n; ++v) {
            if (colour[v] != cell) continue;
            // individualize v: move it just below its cell, shift the rest up
            std::vector<std::uint32_t> next(n);
            for (std::uint32_t w = 0; w < n; ++w)
                next[w] = 2 * colour[w] + (w == v ? 0 : 1);
            search(std::move(next), best);
        }
    }
};

} // namespace

std::string RootedBall::canonical_key() const {
    if (num_vertices == 0) return "empty";
    Canon canon(*this);
    std::vector<std::uint32_t> colour(num_vertices);
    if (has_labels()) {
        // initial colours by (dist, label bits); the root is alone at dist 0
        std::vector<std::uint32_t> idx(num_vertices);
        for (std::uint32_t v = 0; v < num_vertices; ++v) idx[v] = v;
        auto key = [&](std::uint32_t v) {
            return std::make_pair(dist[v], std::bit_cast<std::uint64_t>(labels[v]));
        };
        std::sort(idx.begin(), idx.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
        std::uint32_t c = 0;
        colour[idx[0]] = 0;
        for (std::uint32_t i = 1; i < num_vertices; ++i) {
            if (key(idx[i]) != key(idx[i - 1])) ++c;
            colour[idx[i]] = c;
        }
    } else {
        for (std::uint32_t v = 0; v < num_vertices; ++v) colour[v] = dist[v];
    }
    std::string best;
    canon.search(std::move(colour), best);
    return best;
}

RootedBall RootedBall::relabelled(const std::vector<std::uint32_t>& perm) const {
    if (perm.size() != num_vertices || perm[0] != 0)
        throw invalid_parameter("relabelled: bad permutation");
    RootedBall out;
    out.radius = radius;
    out.num_vertices = num_vertices;
    out.dist.resize(num_vertices);
    out.global_ids.resize(num_vertices);
    if (has_labels()) out.labels.resize(num_vertices);
    for (std::uint32_t v = 0; v < num_vertices; ++v) {
        out.dist[perm[v]] = dist[v];
        out.global_ids[perm[v]] = global_ids[v];
        if (has_labels()) out.labels[perm[v]] = labels[v];
    }
    for (auto [u, v] : edges) {
        const std::uint32_t a = perm[u], b = perm[v];
        out.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

RootedBall ball(const Graph& g, Vertex v, std::uint32_t r) {
    return build_ball(g, v, r, nullptr);
}

RootedBall ball(const Graph& g, Vertex v, std::uint32_t r, std::span<const double> labels) {
    if (labels.size() != g.num_vertices())
        throw invalid_parameter("ball: label array size mismatch");
    return build_ball(g, v, r, labels.data());
}

} // namespace fiidlab
