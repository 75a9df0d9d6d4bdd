#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fiidlab {

using Vertex = std::uint32_t;
using HalfEdge = std::uint32_t;

// Generator tag on a half-edge: generator index i >= 1 is encoded as
// 2*(i-1) for g_i and 2*(i-1)+1 for its inverse. inverse(t) == t ^ 1.
using Tag = std::uint8_t;

std::string tag_name(Tag t);          // "g1", "g1inv", "g2", ...
Tag parse_tag(const std::string& s);  // throws invalid_parameter
inline Tag tag_inverse(Tag t) { return static_cast<Tag>(t ^ 1); }
inline int tag_generator(Tag t) { return (t >> 1) + 1; }  // 1-based family index

// Finite multigraph stored as a perfect matching on half-edges, CSR layout.
// Half-edges of vertex v occupy slots offset(v)..offset(v+1)-1 in a fixed
// order; that order is the canonical neighbour order used wherever a
// "uniform random neighbour" or an ordered star tuple is needed.
// Self-loops and parallel edges are allowed. Immutable after construction;
// safe to share across concurrent readers.
class Graph {
public:
    // Uniform degree d; partner is a perfect matching on {0,...,n*d-1}.
    Graph(std::uint32_t n, std::uint32_t d, std::vector<HalfEdge> partner,
          std::vector<Tag> tags = {});
    // General degrees via explicit offsets (size n+1, offsets[0] == 0).
    Graph(std::vector<std::uint32_t> offsets, std::vector<HalfEdge> partner,
          std::vector<Tag> tags = {});

    std::uint32_t num_vertices() const { return n_; }
    bool is_regular() const { return regular_; }
    std::uint32_t degree() const;  // throws invalid_parameter if irregular
    std::uint32_t degree(Vertex v) const { return offset_[v + 1] - offset_[v]; }
    std::uint64_t num_half_edges() const { return partner_.size(); }
    std::uint64_t num_edges() const { return partner_.size() / 2; }
    bool labelled() const { return !tags_.empty(); }

    HalfEdge half_edge(Vertex v, std::uint32_t slot) const { return offset_[v] + slot; }
    std::uint32_t first_half_edge(Vertex v) const { return offset_[v]; }
    Vertex owner(HalfEdge h) const { return owner_[h]; }
    HalfEdge partner(HalfEdge h) const { return partner_[h]; }
    Vertex neighbour(Vertex v, std::uint32_t slot) const { return target_[offset_[v] + slot]; }
    Vertex target(HalfEdge h) const { return target_[h]; }
    Tag tag(HalfEdge h) const { return tags_[h]; }

    // Structural equality including half-edge layout and tags.
    bool operator==(const Graph& o) const;

    bool is_simple() const;  // no self-loops, no parallel edges
    std::uint64_t num_self_loops() const;

private:
    void finish(std::vector<Tag> tags);

    std::uint32_t n_ = 0;
    bool regular_ = false;
    std::uint32_t d_ = 0;
    std::vector<std::uint32_t> offset_;
    std::vector<HalfEdge> partner_;
    std::vector<Vertex> target_;
    std::vector<Vertex> owner_;
    std::vector<Tag> tags_;
};

// Incremental construction from an edge list (slots in insertion order).
class GraphBuilder {
public:
    explicit GraphBuilder(std::uint32_t n) : n_(n) {}
    void add_edge(Vertex u, Vertex v);
    void add_edge(Vertex u, Vertex v, Tag tu, Tag tv);
    Graph build() const;

private:
    std::uint32_t n_;
    bool labelled_ = false;
    std::vector<std::uint32_t> us_, vs_;
    std::vector<Tag> tus_, tvs_;
};

// Vertex subset with O(1) membership and a stable vertex list.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::uint32_t n) : member_(n, 0) {}
    static VertexSet full(std::uint32_t n);
    static VertexSet of(std::uint32_t n, const std::vector<Vertex>& vs);

    void insert(Vertex v);
    bool contains(Vertex v) const { return member_[v] != 0; }
    std::uint32_t size() const { return size_; }
    std::uint32_t universe() const { return static_cast<std::uint32_t>(member_.size()); }
    const std::vector<Vertex>& vertices() const { return list_; }

private:
    std::vector<std::uint8_t> member_;
    std::vector<Vertex> list_;
    std::uint32_t size_ = 0;
};

// ---- generators ----------------------------------------------------------

struct ConfigurationModelOptions {
    bool reject_non_simple = false;  // resample until simple (changes runtime, not the limit)
    std::uint32_t max_rejections = 10000;
};

// Uniform random pairing of n*d half-edges. Deterministic in seed.
Graph generate_configuration_model(std::uint32_t n, std::uint32_t d, std::uint64_t seed,
                                   const ConfigurationModelOptions& opts = {});

// k independent uniform permutations; v -- pi_i(v) with tags g_i / g_i^-1.
// The result is 2k-regular with an involutive edge labelling.
Graph generate_permutation_model(std::uint32_t n, std::uint32_t k, std::uint64_t seed);

// Explicit small graphs used as test beds.
Graph make_cycle(std::uint32_t n);
Graph make_complete(std::uint32_t n);     // K_n
Graph make_hypercube(std::uint32_t dim);  // 2^dim vertices, dim-regular
Graph make_petersen();                    // 3-regular, n = 10
Graph make_path(std::uint32_t n);         // irregular, for oracle tests

// ---- structure -----------------------------------------------------------

// Length of the shortest cycle: self-loop = 1, parallel pair = 2.
// nullopt is the forest sentinel.
std::optional<std::uint32_t> girth(const Graph& g);

bool is_connected(const Graph& g);

// Partition of the induced subgraph on `s` into connected clusters.
struct Clustering {
    std::vector<std::int32_t> cluster_of;      // -1 for vertices outside s
    std::vector<std::vector<Vertex>> members;  // ascending vertex lists
    std::vector<std::uint32_t> sizes;
    std::uint32_t largest() const;
};
Clustering connected_components(const Graph& g, const VertexSet& s);

struct BoundaryCounts {
    std::uint64_t edge_boundary;             // edges from w to complement (with multiplicity)
    std::uint64_t exterior_vertex_boundary;  // distinct outside vertices adjacent to w
};
BoundaryCounts boundary(const Graph& g, const VertexSet& w);

// ---- edge-list text format ----------------------------------------------
//
// Header "n d" or "n d labelled"; then one line per edge "u v" or "u v tag",
// 0-based. Written in half-edge order; the reader assigns slots greedily in
// line order. Identity is at the labelled-multigraph level; files written by
// write_edge_list round-trip byte-identically.

void write_edge_list(const Graph& g, std::ostream& os);
Graph read_edge_list(std::istream& is);
void write_edge_list_file(const Graph& g, const std::string& path);
Graph read_edge_list_file(const std::string& path);

// Multiset-of-edges equality (ignores half-edge slot layout, keeps tags).
bool same_edge_multiset(const Graph& a, const Graph& b);

} // namespace fiidlab
