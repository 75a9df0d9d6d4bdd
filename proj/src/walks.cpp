#include "fiidlab/walks.hpp"

#include "fiidlab/errors.hpp"
#include "fiidlab/rng.hpp"

namespace fiidlab {

namespace {

Vertex walk_step(const Graph& g, const Configuration& c, Symbol symbol, Vertex cur,
                 rng::Stream64& stream, std::uint64_t& holding) {
    const std::uint32_t slot = stream.next_below(g.degree(cur));
    const Vertex w = g.neighbour(cur, slot);
    if (c.symbols[w] == symbol) return w;
    ++holding;
    return cur;
}

void check_start(const Graph& g, const Configuration& c, Symbol symbol, Vertex start) {
    if (c.symbols.size() != g.num_vertices())
        throw invalid_parameter("configuration does not match graph");
    if (start >= g.num_vertices()) throw invalid_parameter("walk start out of range");
    if (c.symbols[start] != symbol)
        throw invalid_parameter("walk start does not carry the symbol");
}

} // namespace

WalkSample delayed_srw(const Graph& g, const Configuration& c, Symbol symbol, Vertex start,
                       std::uint64_t steps, std::uint64_t seed) {
    check_start(g, c, symbol, start);
    WalkSample w;
    w.start = start;
    w.trajectory.reserve(steps + 1);
    w.trajectory.push_back(start);
    rng::Stream64 stream(seed, rng::kWalk);
    Vertex cur = start;
    for (std::uint64_t t = 0; t < steps; ++t) {
        cur = walk_step(g, c, symbol, cur, stream, w.holding);
        w.trajectory.push_back(cur);
    }
    return w;
}

Vertex delayed_srw_endpoint(const Graph& g, const Configuration& c, Symbol symbol,
                            Vertex start, std::uint64_t steps, std::uint64_t seed) {
    check_start(g, c, symbol, start);
    rng::Stream64 stream(seed, rng::kWalk);
    Vertex cur = start;
    std::uint64_t holding = 0;
    for (std::uint64_t t = 0; t < steps; ++t)
        cur = walk_step(g, c, symbol, cur, stream, holding);
    return cur;
}

BirkhoffResult birkhoff_average(const WalkSample& w, const Configuration& colouring) {
    BirkhoffResult out;
    out.running_mean.reserve(w.trajectory.size());
    double sum = 0.0;
    std::uint64_t k = 0;
    for (Vertex v : w.trajectory) {
        if (v >= colouring.symbols.size())
            throw invalid_parameter("birkhoff_average: colour undefined on trajectory");
        sum += colouring.symbols[v];
        ++k;
        out.running_mean.push_back(sum / double(k));
    }
    out.final_mean = out.running_mean.empty() ? 0.0 : out.running_mean.back();
    return out;
}

} // namespace fiidlab
