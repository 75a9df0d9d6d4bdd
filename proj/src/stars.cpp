#include "fiidlab/stars.hpp"

#include <algorithm>
#include <cmath>

#include "fiidlab/ball.hpp"
#include "fiidlab/errors.hpp"
#include "fiidlab/rng.hpp"
#include "fiidlab/stats.hpp"

namespace fiidlab {

std::uint64_t StarSample::encode(const Symbol* tuple, std::uint32_t len, std::uint32_t a) {
    std::uint64_t key = 0, base = 1;
    for (std::uint32_t i = 0; i < len; ++i) {
        key += base * tuple[i];
        base *= a;
    }
    return key;
}

void StarSample::add(const Symbol* tuple, std::uint32_t len) {
    ++counts[encode(tuple, len, alphabet_size)];
    ++total;
}

void StarSample::merge(const StarSample& other) {
    if (other.d != d || other.alphabet_size != alphabet_size)
        throw invalid_parameter("StarSample::merge: incompatible samples");
    for (const auto& [k, c] : other.counts) counts[k] += c;
    total += other.total;
}

StarSample collect_stars(const Graph& g, const Configuration& c, const VertexSet& where) {
    if (c.symbols.size() != g.num_vertices())
        throw invalid_parameter("configuration does not match graph");
    StarSample s;
    s.d = g.degree();
    s.alphabet_size = static_cast<std::uint32_t>(c.alphabet.size());
    if (s.alphabet_size < 2) throw invalid_parameter("collect_stars: degenerate alphabet");
    const double max_key = std::pow(double(s.alphabet_size), double(s.d) + 1.0);
    if (max_key > 9e18) throw invalid_parameter("collect_stars: tuple space too large");
    std::vector<Symbol> tuple(s.d + 1);
    for (Vertex v : where.vertices()) {
        tuple[0] = c.symbols[v];
        for (std::uint32_t slot = 0; slot < s.d; ++slot)
            tuple[slot + 1] = c.symbols[g.neighbour(v, slot)];
        s.add(tuple.data(), s.d + 1);
    }
    return s;
}

VertexSet tree_like_vertices(const Graph& g, std::uint32_t radius) {
    VertexSet out(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        const RootedBall b = ball(g, v, radius);
        if (b.is_tree()) out.insert(v);
    }
    return out;
}

namespace {

struct Tallies {
    std::vector<std::uint64_t> star;       // per tuple key (dense by cells list)
    std::vector<std::uint64_t> tuple_keys; // cell -> key
};

double plugin_entropy_counts(const std::vector<std::uint64_t>& counts, std::uint64_t total) {
    double h = 0.0;
    for (std::uint64_t c : counts) {
        if (c == 0) continue;
        const double p = double(c) / double(total);
        h -= p * std::log2(p);
    }
    return h;
}

struct DerivedEntropies {
    double star, root, unordered, rest_given_closed, kappa_hat;
    bool have_closed;
};

DerivedEntropies derive(const std::vector<std::uint64_t>& keys,
                        const std::vector<std::uint64_t>& counts, std::uint64_t total,
                        std::uint32_t d, std::uint32_t a) {
    DerivedEntropies out{0, 0, 0, 0, 0, false};
    out.star = plugin_entropy_counts(counts, total);
    std::vector<std::uint64_t> root_counts(a, 0);
    std::unordered_map<std::uint64_t, std::uint64_t> unordered;
    std::unordered_map<std::uint64_t, std::uint64_t> closed_rest;  // binary only
    std::uint64_t closed_total = 0, closed_open_nbrs = 0;
    std::vector<Symbol> digits(d + 1);
    for (std::size_t cell = 0; cell < keys.size(); ++cell) {
        const std::uint64_t c = counts[cell];
        if (c == 0) continue;
        std::uint64_t k = keys[cell];
        for (std::uint32_t i = 0; i <= d; ++i) {
            digits[i] = static_cast<Symbol>(k % a);
            k /= a;
        }
        root_counts[digits[0]] += c;
        if (a == 2 && digits[0] == 0) {
            closed_total += c;
            std::uint64_t open = 0;
            for (std::uint32_t i = 1; i <= d; ++i) open += digits[i];
            closed_open_nbrs += open * c;
            closed_rest[StarSample::encode(digits.data() + 1, d, a)] += c;
        }
        std::vector<Symbol> rest(digits.begin() + 1, digits.end());
        std::sort(rest.begin(), rest.end());
        const std::uint64_t ukey =
            digits[0] + std::uint64_t(a) * StarSample::encode(rest.data(), d, a);
        unordered[ukey] += c;
    }
    out.root = plugin_entropy_counts(root_counts, total);
    {
        std::vector<std::uint64_t> uc;
        uc.reserve(unordered.size());
        for (const auto& [k, c] : unordered) uc.push_back(c);
        out.unordered = plugin_entropy_counts(uc, total);
    }
    if (a == 2 && closed_total > 0) {
        out.have_closed = true;
        std::vector<std::uint64_t> cc;
        cc.reserve(closed_rest.size());
        for (const auto& [k, c] : closed_rest) cc.push_back(c);
        out.rest_given_closed = plugin_entropy_counts(cc, closed_total);
        out.kappa_hat = double(closed_open_nbrs) / (double(closed_total) * d);
    }
    return out;
}

} // namespace

StarEntropyReport star_entropy_check(const StarSample& s, double threshold_factor,
                                     std::uint32_t bootstrap_rounds, std::uint64_t seed) {
    if (s.total == 0) throw invalid_parameter("star_entropy_check: empty sample");
    std::vector<std::uint64_t> keys, counts;
    keys.reserve(s.counts.size());
    for (const auto& [k, c] : s.counts) {
        keys.push_back(k);
        counts.push_back(c);
    }
    // deterministic cell order for reproducible bootstrap
    std::vector<std::size_t> order(keys.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });
    {
        std::vector<std::uint64_t> k2(keys.size()), c2(keys.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            k2[i] = keys[order[i]];
            c2[i] = counts[order[i]];
        }
        keys.swap(k2);
        counts.swap(c2);
    }

    StarEntropyReport r;
    r.total = s.total;
    r.threshold_factor = threshold_factor;
    r.binary = s.alphabet_size == 2;
    const DerivedEntropies base = derive(keys, counts, s.total, s.d, s.alphabet_size);
    r.star_entropy = base.star;
    r.root_entropy = base.root;
    r.rest_given_root = base.star - base.root;
    r.unordered_star_entropy = base.unordered;
    r.ratio = base.root > 0 ? base.star / base.root : 0.0;
    r.margin = base.star - threshold_factor * base.root;
    if (r.binary && base.have_closed) {
        r.rest_given_closed_root = base.rest_given_closed;
        r.kappa_hat = base.kappa_hat;
    }

    if (bootstrap_rounds > 0) {
        rng::Stream64 stream(seed, rng::kBootstrap);
        std::vector<double> bs_star, bs_root, bs_margin, bs_closed;
        std::vector<std::uint64_t> resampled(counts.size());
        for (std::uint32_t b = 0; b < bootstrap_rounds; ++b) {
            std::uint64_t new_total = 0;
            for (std::size_t i = 0; i < counts.size(); ++i) {
                resampled[i] = sample_poisson(double(counts[i]), stream);
                new_total += resampled[i];
            }
            if (new_total == 0) continue;
            const DerivedEntropies dd =
                derive(keys, resampled, new_total, s.d, s.alphabet_size);
            bs_star.push_back(dd.star);
            bs_root.push_back(dd.root);
            bs_margin.push_back(dd.star - threshold_factor * dd.root);
            if (r.binary && dd.have_closed) bs_closed.push_back(dd.rest_given_closed);
        }
        r.se_star = summarize(bs_star).stddev;
        r.se_root = summarize(bs_root).stddev;
        r.se_margin = summarize(bs_margin).stddev;
        if (!bs_closed.empty()) r.se_rest_given_closed = summarize(bs_closed).stddev;
    }
    return r;
}

} // namespace fiidlab
