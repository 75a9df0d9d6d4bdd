#include "fiidlab/wilson.hpp"

#include "fiidlab/errors.hpp"
#include "fiidlab/rng.hpp"

namespace fiidlab {

std::uint32_t SpanningTree::depth(Vertex v) const {
    std::uint32_t d = 0;
    while (v != root) {
        v = parent[v];
        ++d;
    }
    return d;
}

std::vector<std::pair<Vertex, Vertex>> SpanningTree::edge_list() const {
    std::vector<std::pair<Vertex, Vertex>> es;
    es.reserve(parent.size() - 1);
    for (Vertex v = 0; v < parent.size(); ++v)
        if (v != root) es.emplace_back(v, parent[v]);
    return es;
}

SpanningTree wilson_ust(const Graph& g, Vertex root, std::uint64_t seed) {
    const std::uint32_t n = g.num_vertices();
    if (root >= n) throw invalid_parameter("wilson: root out of range");
    if (!is_connected(g)) throw invalid_parameter("wilson: graph must be connected");
    SpanningTree t;
    t.root = root;
    t.parent.assign(n, root);
    t.parent_edge.assign(n, 0);
    std::vector<std::uint8_t> in_tree(n, 0);
    std::vector<std::uint32_t> next_slot(n, 0);
    in_tree[root] = 1;
    rng::Stream64 stream(seed, rng::kWilson);
    for (Vertex v = 0; v < n; ++v) {
        if (in_tree[v]) continue;
        Vertex u = v;
        while (!in_tree[u]) {  // random walk; next_slot keeps only the last exit
            const std::uint32_t slot = stream.next_below(g.degree(u));
            next_slot[u] = slot;
            u = g.neighbour(u, slot);
        }
        u = v;
        while (!in_tree[u]) {  // retrace the loop-erased path into the tree
            const std::uint32_t slot = next_slot[u];
            t.parent[u] = g.neighbour(u, slot);
            t.parent_edge[u] = g.half_edge(u, slot);
            in_tree[u] = 1;
            u = t.parent[u];
        }
    }
    return t;
}

int majority_label_statistic(const Graph& g, const SpanningTree& t, Vertex v,
                             std::uint32_t window) {
    if (!g.labelled()) throw invalid_parameter("majority statistic needs edge tags");
    if (v >= g.num_vertices()) throw invalid_parameter("majority statistic: vertex out of range");
    const std::uint32_t need = 2 * window + 1;
    std::uint32_t family1 = 0, seen = 0;
    Vertex u = v;
    while (seen < need) {
        if (u == t.root)
            throw invalid_parameter("majority statistic: path to root shorter than window");
        const Tag tag = g.tag(t.parent_edge[u]);
        if (tag_generator(tag) == 1) ++family1;
        ++seen;
        u = t.parent[u];
    }
    return family1 * 2 > need ? 1 : 0;  // odd window, no ties
}

} // namespace fiidlab
