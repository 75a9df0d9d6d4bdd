#include "fiidlab/percolation.hpp"

#include <algorithm>
#include <cmath>

#include "fiidlab/errors.hpp"
#include "fiidlab/rng.hpp"
#include "fiidlab/simd/kernels.hpp"

namespace fiidlab {

namespace {

void check_config(const Graph& g, const Configuration& c) {
    if (c.symbols.size() != g.num_vertices())
        throw invalid_parameter("configuration does not match graph");
}

} // namespace

DensityReport density_report(const Graph& g, const Configuration& c, Symbol symbol) {
    check_config(g, c);
    DensityReport r;
    r.symbol = symbol < c.alphabet.size() ? c.alphabet[symbol] : std::to_string(int(symbol));
    r.open_count = c.count(symbol);
    r.density = g.num_vertices() ? double(r.open_count) / g.num_vertices() : 0.0;
    std::uint64_t open_open_half_edges = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (c.symbols[v] != symbol) continue;
        for (std::uint32_t s = 0; s < g.degree(v); ++s)
            if (c.symbols[g.neighbour(v, s)] == symbol) ++open_open_half_edges;
    }
    r.open_open_edges = open_open_half_edges / 2;
    if (r.open_count > 0) {
        r.avg_degree_defined = true;
        r.conditional_avg_degree = 2.0 * double(r.open_open_edges) / double(r.open_count);
    }
    return r;
}

ClusterSummary cluster_stats(const Graph& g, const Configuration& c, Symbol symbol) {
    check_config(g, c);
    const VertexSet support = c.support(symbol);
    const Clustering clustering = connected_components(g, support);
    ClusterSummary out;
    out.clusters.resize(clustering.members.size());
    for (std::uint32_t id = 0; id < clustering.members.size(); ++id) {
        auto& cs = out.clusters[id];
        cs.cluster_id = id;
        cs.size = clustering.sizes[id];
    }
    // internal edges, once per edge
    for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
        if (h >= g.partner(h)) continue;
        const Vertex u = g.owner(h), v = g.target(h);
        if (c.symbols[u] != symbol || c.symbols[v] != symbol) continue;
        const auto cu = clustering.cluster_of[u];
        if (cu >= 0 && cu == clustering.cluster_of[v]) ++out.clusters[cu].internal_edges;
    }
    for (auto& cs : out.clusters) {
        cs.avg_degree = cs.size ? 2.0 * double(cs.internal_edges) / cs.size : 0.0;
        out.largest_size = std::max(out.largest_size, cs.size);
        ++out.size_histogram[cs.size];
    }
    return out;
}

DegreeBookkeeping degree_bookkeeping(const Graph& g, const Configuration& c, Symbol symbol) {
    check_config(g, c);
    DegreeBookkeeping out;
    const std::uint64_t n = g.num_vertices();
    const std::uint64_t open = c.count(symbol);
    out.density = n ? double(open) / double(n) : 0.0;
    std::uint64_t open_open_he = 0, closed_open_he = 0, closed_he = 0;
    for (Vertex v = 0; v < n; ++v) {
        const bool v_open = c.symbols[v] == symbol;
        std::uint64_t open_nbrs = 0;
        for (std::uint32_t s = 0; s < g.degree(v); ++s)
            if (c.symbols[g.neighbour(v, s)] == symbol) ++open_nbrs;
        if (v_open) {
            open_open_he += open_nbrs;
        } else {
            closed_open_he += open_nbrs;
            closed_he += g.degree(v);
        }
    }
    if (open > 0 && closed_he > 0) {
        out.defined = true;
        out.cond_avg_degree = double(open_open_he) / double(open);
        out.kappa_hat = double(closed_open_he) / double(closed_he);
    }
    return out;
}

PcSweepResult pc_sweep(const Graph& g, const Configuration& c, Symbol symbol,
                       const std::vector<double>& p_grid, std::uint32_t replicas,
                       std::uint64_t seed, const PcSweepOptions& opts) {
    check_config(g, c);
    if (p_grid.empty()) throw invalid_parameter("pc_sweep: empty p grid");
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        if (!(p_grid[i] > 0.0 && p_grid[i] <= 1.0))
            throw invalid_parameter("pc_sweep: grid values must lie in (0,1]");
        if (i > 0 && p_grid[i] <= p_grid[i - 1])
            throw invalid_parameter("pc_sweep: grid must be strictly increasing");
    }
    if (replicas < 1) throw invalid_parameter("pc_sweep: replicas must be >= 1");

    const VertexSet support = c.support(symbol);
    const Clustering clustering = connected_components(g, support);
    const std::uint32_t largest = clustering.largest();
    if (largest < opts.min_cluster)
        throw invalid_parameter("pc_sweep: no cluster of size >= " +
                                std::to_string(opts.min_cluster) +
                                " (insufficient cluster)");

    const std::uint32_t n = g.num_vertices();
    const auto& open_vertices = support.vertices();
    const std::size_t grid_size = p_grid.size();

    std::vector<std::vector<double>> curves(replicas, std::vector<double>(grid_size, 0.0));
    std::vector<double> u(n);
    std::vector<std::pair<double, Vertex>> order;
    std::vector<std::uint32_t> parent(n), size(n);
    std::vector<std::uint8_t> active(n);

    auto find_root = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    for (std::uint32_t rep = 0; rep < replicas; ++rep) {
        const std::uint64_t key =
            rng::stream_key(seed, rng::substream(rng::kRetention, rep));
        simd::fill_uniform(key, 0, n, u.data());
        order.clear();
        order.reserve(open_vertices.size());
        for (Vertex v : open_vertices) order.emplace_back(u[v], v);
        std::sort(order.begin(), order.end());
        std::fill(active.begin(), active.end(), 0);
        for (Vertex v : open_vertices) {
            parent[v] = v;
            size[v] = 1;
        }
        std::uint32_t cur_max = 0;
        std::size_t j = 0;
        auto record_until = [&](double threshold) {
            while (j < grid_size && p_grid[j] < threshold) {
                curves[rep][j] = double(cur_max) / double(largest);
                ++j;
            }
        };
        for (const auto& [uv, v] : order) {
            record_until(uv);
            active[v] = 1;
            std::uint32_t root_v = find_root(v);
            for (std::uint32_t s = 0; s < g.degree(v); ++s) {
                const Vertex w = g.neighbour(v, s);
                if (w == v || !active[w]) continue;
                std::uint32_t root_w = find_root(w);
                if (root_w == root_v) continue;
                if (size[root_v] < size[root_w]) std::swap(root_v, root_w);
                parent[root_w] = root_v;
                size[root_v] += size[root_w];
            }
            cur_max = std::max(cur_max, size[root_v]);
        }
        record_until(2.0);  // flush the remaining grid points
    }

    PcSweepResult out;
    out.p_grid = p_grid;
    out.replicas = replicas;
    out.largest_original_cluster = largest;
    out.mean_giant_fraction.resize(grid_size);
    out.stderr_giant_fraction.resize(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) {
        double m = 0.0;
        for (std::uint32_t r = 0; r < replicas; ++r) m += curves[r][j];
        m /= replicas;
        double var = 0.0;
        for (std::uint32_t r = 0; r < replicas; ++r) {
            const double dlt = curves[r][j] - m;
            var += dlt * dlt;
        }
        out.mean_giant_fraction[j] = m;
        out.stderr_giant_fraction[j] =
            replicas > 1 ? std::sqrt(var / (replicas - 1) / replicas) : 0.0;
    }
    for (std::size_t j = 1; j < grid_size; ++j)
        if (out.mean_giant_fraction[j] + 1e-12 < out.mean_giant_fraction[j - 1])
            out.isotonic_ok = false;

    auto crossing = [&](const std::vector<double>& curve) -> double {
        for (std::size_t j = 0; j < grid_size; ++j) {
            if (curve[j] > opts.tau) {
                const double p_lo = j == 0 ? 0.0 : p_grid[j - 1];
                const double f_lo = j == 0 ? 0.0 : curve[j - 1];
                const double p_hi = p_grid[j], f_hi = curve[j];
                if (f_hi <= f_lo) return p_hi;
                return p_lo + (opts.tau - f_lo) * (p_hi - p_lo) / (f_hi - f_lo);
            }
        }
        return -1.0;
    };
    const double pc_mean = crossing(out.mean_giant_fraction);
    if (pc_mean >= 0.0) {
        out.crossed = true;
        out.p_c_estimate = pc_mean;
        std::vector<double> per_rep;
        for (std::uint32_t r = 0; r < replicas; ++r) {
            const double pr = crossing(curves[r]);
            if (pr >= 0.0) per_rep.push_back(pr);
        }
        if (per_rep.size() > 1) {
            double m = 0.0;
            for (double p : per_rep) m += p;
            m /= per_rep.size();
            double var = 0.0;
            for (double p : per_rep) var += (p - m) * (p - m);
            out.p_c_stderr = std::sqrt(var / (per_rep.size() - 1) / per_rep.size());
        }
    }
    return out;
}

MixedEdgeReport mixed_edge_density(const Graph& g, const Configuration& c, Symbol symbol,
                                   const Configuration& colouring) {
    check_config(g, c);
    check_config(g, colouring);
    MixedEdgeReport out;
    for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
        if (h >= g.partner(h)) continue;
        const Vertex u = g.owner(h), v = g.target(h);
        if (c.symbols[u] != symbol || c.symbols[v] != symbol) continue;
        ++out.internal;
        if (colouring.symbols[u] != colouring.symbols[v]) ++out.mixed;
    }
    if (out.internal > 0) {
        out.defined = true;
        out.value = double(out.mixed) / double(out.internal);
    }
    return out;
}

} // namespace fiidlab
