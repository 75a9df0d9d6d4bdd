#include "fiidlab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fiidlab/errors.hpp"
#include "fiidlab/rng.hpp"

namespace fiidlab {

std::string tag_name(Tag t) {
    std::string s = "g" + std::to_string(tag_generator(t));
    if (t & 1) s += "inv";
    return s;
}

Tag parse_tag(const std::string& s) {
    if (s.size() < 2 || s[0] != 'g')
        throw invalid_parameter("bad tag: " + s);
    bool inv = false;
    std::string num = s.substr(1);
    if (num.size() > 3 && num.substr(num.size() - 3) == "inv") {
        inv = true;
        num = num.substr(0, num.size() - 3);
    }
    int idx = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), idx);
    if (ec != std::errc() || p != num.data() + num.size() || idx < 1 || idx > 128)
        throw invalid_parameter("bad tag: " + s);
    return static_cast<Tag>(2 * (idx - 1) + (inv ? 1 : 0));
}

Graph::Graph(std::uint32_t n, std::uint32_t d, std::vector<HalfEdge> partner,
             std::vector<Tag> tags)
    : n_(n), regular_(true), d_(d), partner_(std::move(partner)) {
    if (partner_.size() != std::uint64_t(n) * d)
        throw invalid_parameter("partner array size mismatch");
    offset_.resize(n_ + 1);
    for (std::uint32_t v = 0; v <= n_; ++v) offset_[v] = v * d;
    finish(std::move(tags));
}

Graph::Graph(std::vector<std::uint32_t> offsets, std::vector<HalfEdge> partner,
             std::vector<Tag> tags)
    : offset_(std::move(offsets)), partner_(std::move(partner)) {
    if (offset_.empty() || offset_.front() != 0 || offset_.back() != partner_.size())
        throw invalid_parameter("bad offsets");
    n_ = static_cast<std::uint32_t>(offset_.size() - 1);
    regular_ = true;
    d_ = n_ > 0 ? offset_[1] : 0;
    for (std::uint32_t v = 0; v < n_; ++v)
        if (offset_[v + 1] - offset_[v] != d_) { regular_ = false; d_ = 0; break; }
    finish(std::move(tags));
}

void Graph::finish(std::vector<Tag> tags) {
    const std::size_t m = partner_.size();
    if (m % 2 != 0) throw invalid_parameter("odd number of half-edges");
    owner_.resize(m);
    for (std::uint32_t v = 0; v < n_; ++v)
        for (std::uint32_t h = offset_[v]; h < offset_[v + 1]; ++h) owner_[h] = v;
    target_.resize(m);
    for (std::size_t h = 0; h < m; ++h) {
        const HalfEdge p = partner_[h];
        if (p >= m || p == h || partner_[p] != h)
            throw invalid_parameter("half-edge pairing is not a perfect matching");
        target_[h] = owner_[p];
    }
    if (!tags.empty()) {
        if (tags.size() != m) throw invalid_parameter("tag array size mismatch");
        for (std::size_t h = 0; h < m; ++h)
            if (tags[partner_[h]] != tag_inverse(tags[h]))
                throw invalid_parameter("edge tags are not mutually inverse");
        tags_ = std::move(tags);
    }
}

std::uint32_t Graph::degree() const {
    if (!regular_) throw invalid_parameter("graph is not regular");
    return d_;
}

bool Graph::operator==(const Graph& o) const {
    return n_ == o.n_ && offset_ == o.offset_ && partner_ == o.partner_ && tags_ == o.tags_;
}

std::uint64_t Graph::num_self_loops() const {
    std::uint64_t c = 0;
    for (std::size_t h = 0; h < partner_.size(); ++h)
        if (target_[h] == owner_[h]) ++c;
    return c / 2;
}

bool Graph::is_simple() const {
    if (num_self_loops() > 0) return false;
    std::vector<Vertex> nbrs;
    for (std::uint32_t v = 0; v < n_; ++v) {
        nbrs.assign(target_.begin() + offset_[v], target_.begin() + offset_[v + 1]);
        std::sort(nbrs.begin(), nbrs.end());
        for (std::size_t i = 1; i < nbrs.size(); ++i)
            if (nbrs[i] == nbrs[i - 1]) return false;
    }
    return true;
}

void GraphBuilder::add_edge(Vertex u, Vertex v) {
    if (labelled_) throw invalid_parameter("mixed labelled/unlabelled edges");
    us_.push_back(u);
    vs_.push_back(v);
}

void GraphBuilder::add_edge(Vertex u, Vertex v, Tag tu, Tag tv) {
    if (!us_.empty() && !labelled_)
        throw invalid_parameter("mixed labelled/unlabelled edges");
    if (tv != tag_inverse(tu)) throw invalid_parameter("edge tags must be mutually inverse");
    labelled_ = true;
    us_.push_back(u);
    vs_.push_back(v);
    tus_.push_back(tu);
    tvs_.push_back(tv);
}

Graph GraphBuilder::build() const {
    std::vector<std::uint32_t> deg(n_, 0);
    for (std::size_t i = 0; i < us_.size(); ++i) {
        if (us_[i] >= n_ || vs_[i] >= n_) throw invalid_parameter("edge endpoint out of range");
        ++deg[us_[i]];
        ++deg[vs_[i]];
    }
    std::vector<std::uint32_t> offsets(n_ + 1, 0);
    for (std::uint32_t v = 0; v < n_; ++v) offsets[v + 1] = offsets[v] + deg[v];
    std::vector<std::uint32_t> next(offsets.begin(), offsets.end() - 1);
    std::vector<HalfEdge> partner(offsets.back());
    std::vector<Tag> tags(labelled_ ? offsets.back() : 0);
    for (std::size_t i = 0; i < us_.size(); ++i) {
        const HalfEdge hu = next[us_[i]]++;
        const HalfEdge hv = next[vs_[i]]++;
        partner[hu] = hv;
        partner[hv] = hu;
        if (labelled_) {
            tags[hu] = tus_[i];
            tags[hv] = tvs_[i];
        }
    }
    return Graph(std::move(offsets), std::move(partner), std::move(tags));
}

VertexSet VertexSet::full(std::uint32_t n) {
    VertexSet s(n);
    for (Vertex v = 0; v < n; ++v) s.insert(v);
    return s;
}

VertexSet VertexSet::of(std::uint32_t n, const std::vector<Vertex>& vs) {
    VertexSet s(n);
    for (Vertex v : vs) s.insert(v);
    return s;
}

void VertexSet::insert(Vertex v) {
    if (v >= member_.size()) throw invalid_parameter("vertex out of range");
    if (!member_[v]) {
        member_[v] = 1;
        list_.push_back(v);
        ++size_;
    }
}

// ---- generators ----------------------------------------------------------

namespace {

Graph pairing_from_shuffle(std::uint32_t n, std::uint32_t d, rng::Stream64& stream) {
    const std::uint64_t m = std::uint64_t(n) * d;
    std::vector<HalfEdge> ids(m);
    for (std::uint64_t i = 0; i < m; ++i) ids[i] = static_cast<HalfEdge>(i);
    stream.shuffle(ids.data(), ids.size());
    std::vector<HalfEdge> partner(m);
    for (std::uint64_t i = 0; i < m; i += 2) {
        partner[ids[i]] = ids[i + 1];
        partner[ids[i + 1]] = ids[i];
    }
    return Graph(n, d, std::move(partner));
}

} // namespace

Graph generate_configuration_model(std::uint32_t n, std::uint32_t d, std::uint64_t seed,
                                   const ConfigurationModelOptions& opts) {
    if (n < 2) throw invalid_parameter("configuration model needs n >= 2");
    if (d < 1) throw invalid_parameter("configuration model needs d >= 1");
    if ((std::uint64_t(n) * d) % 2 != 0)
        throw invalid_parameter("configuration model needs n*d even");
    rng::Stream64 stream(seed, rng::kPairing);
    Graph g = pairing_from_shuffle(n, d, stream);
    if (!opts.reject_non_simple) return g;
    for (std::uint32_t attempt = 0; attempt < opts.max_rejections; ++attempt) {
        if (g.is_simple()) return g;
        g = pairing_from_shuffle(n, d, stream);
    }
    throw convergence_error("no simple pairing found within rejection budget", 0.0,
                            static_cast<int>(opts.max_rejections));
}

Graph generate_permutation_model(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
    if (n < 1 || k < 1) throw invalid_parameter("permutation model needs n >= 1, k >= 1");
    const std::uint32_t d = 2 * k;
    std::vector<HalfEdge> partner(std::uint64_t(n) * d);
    std::vector<Tag> tags(partner.size());
    std::vector<Vertex> perm(n);
    for (std::uint32_t i = 0; i < k; ++i) {
        for (Vertex v = 0; v < n; ++v) perm[v] = v;
        rng::Stream64 stream(seed, rng::substream(rng::kPermutation, i));
        stream.shuffle(perm.data(), perm.size());
        const Tag out_tag = static_cast<Tag>(2 * i);
        for (Vertex v = 0; v < n; ++v) {
            const HalfEdge h_out = v * d + 2 * i;
            const HalfEdge h_in = perm[v] * d + 2 * i + 1;
            partner[h_out] = h_in;
            partner[h_in] = h_out;
            tags[h_out] = out_tag;
            tags[h_in] = tag_inverse(out_tag);
        }
    }
    return Graph(n, d, std::move(partner), std::move(tags));
}

Graph make_cycle(std::uint32_t n) {
    if (n < 2) throw invalid_parameter("cycle needs n >= 2");
    GraphBuilder b(n);
    for (Vertex v = 0; v < n; ++v) b.add_edge(v, (v + 1) % n);
    return b.build();
}

Graph make_complete(std::uint32_t n) {
    GraphBuilder b(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
    return b.build();
}

Graph make_hypercube(std::uint32_t dim) {
    const std::uint32_t n = 1u << dim;
    GraphBuilder b(n);
    for (Vertex v = 0; v < n; ++v)
        for (std::uint32_t bit = 0; bit < dim; ++bit) {
            const Vertex w = v ^ (1u << bit);
            if (v < w) b.add_edge(v, w);
        }
    return b.build();
}

Graph make_petersen() {
    GraphBuilder b(10);
    for (Vertex v = 0; v < 5; ++v) b.add_edge(v, (v + 1) % 5);        // outer C_5
    for (Vertex v = 0; v < 5; ++v) b.add_edge(5 + v, 5 + (v + 2) % 5);  // pentagram
    for (Vertex v = 0; v < 5; ++v) b.add_edge(v, 5 + v);              // spokes
    return b.build();
}

Graph make_path(std::uint32_t n) {
    if (n < 2) throw invalid_parameter("path needs n >= 2");
    GraphBuilder b(n);
    for (Vertex v = 0; v + 1 < n; ++v) b.add_edge(v, v + 1);
    return b.build();
}

// ---- structure -----------------------------------------------------------

std::optional<std::uint32_t> girth(const Graph& g) {
    const std::uint32_t n = g.num_vertices();
    if (g.num_self_loops() > 0) return 1;
    {
        std::vector<Vertex> nbrs;
        for (Vertex v = 0; v < n; ++v) {
            nbrs.clear();
            for (std::uint32_t s = 0; s < g.degree(v); ++s) nbrs.push_back(g.neighbour(v, s));
            std::sort(nbrs.begin(), nbrs.end());
            for (std::size_t i = 1; i < nbrs.size(); ++i)
                if (nbrs[i] == nbrs[i - 1]) return 2;
        }
    }
    // Simple graph now; BFS from every vertex, pruned at half the best cycle.
    constexpr std::uint32_t kInf = 0xFFFFFFFFu;
    std::uint32_t best = kInf;
    std::vector<std::uint32_t> dist(n), stamp(n, 0), parent(n);
    std::vector<Vertex> queue(n);
    std::uint32_t round = 0;
    for (Vertex root = 0; root < n; ++root) {
        ++round;
        std::uint32_t head = 0, tail = 0;
        queue[tail++] = root;
        stamp[root] = round;
        dist[root] = 0;
        parent[root] = root;
        while (head < tail) {
            const Vertex x = queue[head++];
            if (best != kInf && 2 * dist[x] + 1 >= best) break;
            for (std::uint32_t s = 0; s < g.degree(x); ++s) {
                const Vertex y = g.neighbour(x, s);
                if (stamp[y] != round) {
                    stamp[y] = round;
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue[tail++] = y;
                } else if (y != parent[x]) {
                    best = std::min(best, dist[x] + dist[y] + 1);
                }
            }
        }
    }
    if (best == kInf) return std::nullopt;
    return best;
}

bool is_connected(const Graph& g) {
    const std::uint32_t n = g.num_vertices();
    if (n == 0) return true;
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::uint32_t count = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (std::uint32_t s = 0; s < g.degree(v); ++s) {
            const Vertex w = g.neighbour(v, s);
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

std::uint32_t Clustering::largest() const {
    std::uint32_t best = 0;
    for (std::uint32_t s : sizes) best = std::max(best, s);
    return best;
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent, size;
    explicit UnionFind(std::uint32_t n) : parent(n), size(n, 1) {
        for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];  // path halving
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

} // namespace

Clustering connected_components(const Graph& g, const VertexSet& s) {
    const std::uint32_t n = g.num_vertices();
    UnionFind uf(n);
    for (Vertex v : s.vertices()) {
        for (std::uint32_t slot = 0; slot < g.degree(v); ++slot) {
            const Vertex w = g.neighbour(v, slot);
            if (w != v && s.contains(w)) uf.unite(v, w);
        }
    }
    Clustering out;
    out.cluster_of.assign(n, -1);
    std::vector<std::int32_t> id_of_root(n, -1);
    for (Vertex v = 0; v < n; ++v) {
        if (!s.contains(v)) continue;
        const std::uint32_t r = uf.find(v);
        if (id_of_root[r] < 0) {
            id_of_root[r] = static_cast<std::int32_t>(out.members.size());
            out.members.emplace_back();
            out.sizes.push_back(0);
        }
        const auto id = id_of_root[r];
        out.cluster_of[v] = id;
        out.members[static_cast<std::size_t>(id)].push_back(v);
        ++out.sizes[static_cast<std::size_t>(id)];
    }
    return out;
}

BoundaryCounts boundary(const Graph& g, const VertexSet& w) {
    BoundaryCounts out{0, 0};
    std::vector<std::uint8_t> seen(g.num_vertices(), 0);
    for (Vertex v : w.vertices()) {
        for (std::uint32_t slot = 0; slot < g.degree(v); ++slot) {
            const Vertex t = g.neighbour(v, slot);
            if (w.contains(t)) continue;
            ++out.edge_boundary;
            if (!seen[t]) {
                seen[t] = 1;
                ++out.exterior_vertex_boundary;
            }
        }
    }
    return out;
}

// ---- edge-list text format ----------------------------------------------

void write_edge_list(const Graph& g, std::ostream& os) {
    std::uint32_t d = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) d = std::max(d, g.degree(v));
    os << g.num_vertices() << ' ' << d;
    if (g.labelled()) os << " labelled";
    os << '\n';
    for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
        if (h >= g.partner(h)) continue;
        os << g.owner(h) << ' ' << g.target(h);
        if (g.labelled()) os << ' ' << tag_name(g.tag(h));
        os << '\n';
    }
}

Graph read_edge_list(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw io_error("edge list: missing header");
    std::istringstream hs(line);
    std::uint64_t n = 0, d = 0;
    std::string flag;
    if (!(hs >> n >> d)) throw io_error("edge list: bad header");
    bool labelled = false;
    if (hs >> flag) {
        if (flag != "labelled") throw io_error("edge list: bad header flag '" + flag + "'");
        labelled = true;
    }
    if (n > 0xFFFFFFFFull) throw io_error("edge list: n too large");
    GraphBuilder b(static_cast<std::uint32_t>(n));
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::uint64_t u = 0, v = 0;
        if (!(ls >> u >> v))
            throw io_error("edge list: bad edge at line " + std::to_string(lineno));
        if (u >= n || v >= n)
            throw io_error("edge list: endpoint out of range at line " + std::to_string(lineno));
        if (labelled) {
            std::string t;
            if (!(ls >> t))
                throw io_error("edge list: missing tag at line " + std::to_string(lineno));
            const Tag tu = parse_tag(t);
            b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), tu, tag_inverse(tu));
        } else {
            b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
        }
    }
    Graph g = b.build();
    std::uint32_t dmax = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) dmax = std::max(dmax, g.degree(v));
    if (dmax != d) throw io_error("edge list: header degree does not match edges");
    return g;
}

void write_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    write_edge_list(g, os);
    if (!os) throw io_error("write failed: " + path);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open for reading: " + path);
    return read_edge_list(is);
}

bool same_edge_multiset(const Graph& a, const Graph& b) {
    if (a.num_vertices() != b.num_vertices() || a.labelled() != b.labelled()) return false;
    if (a.num_half_edges() != b.num_half_edges()) return false;
    auto edges = [](const Graph& g) {
        std::vector<std::tuple<Vertex, Vertex, Tag>> es;
        for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
            if (h >= g.partner(h)) continue;
            Vertex u = g.owner(h), v = g.target(h);
            Tag t = g.labelled() ? g.tag(h) : 0;
            if (v < u) {
                std::swap(u, v);
                if (g.labelled()) t = tag_inverse(t);
            } else if (u == v && g.labelled()) {
                t = std::min(t, tag_inverse(t));
            }
            es.emplace_back(u, v, t);
        }
        std::sort(es.begin(), es.end());
        return es;
    };
    return edges(a) == edges(b);
}

} // namespace fiidlab
