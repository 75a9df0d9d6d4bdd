#include "fiidlab/factors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fiidlab/errors.hpp"
#include "fiidlab/simd/kernels.hpp"

namespace fiidlab {

namespace {

// Reusable BFS over radius-r balls; visitor sees every ball vertex once.
class BallScanner {
public:
    explicit BallScanner(const Graph& g)
        : g_(g), stamp_(g.num_vertices(), 0), dist_(g.num_vertices(), 0) {}

    template <class F>
    void scan(Vertex v, std::uint32_t r, F&& f) {
        ++round_;
        queue_.clear();
        queue_.push_back(v);
        stamp_[v] = round_;
        dist_[v] = 0;
        std::size_t head = 0;
        while (head < queue_.size()) {
            const Vertex x = queue_[head++];
            f(x);
            if (dist_[x] == r) continue;
            for (std::uint32_t s = 0; s < g_.degree(x); ++s) {
                const Vertex y = g_.neighbour(x, s);
                if (stamp_[y] != round_) {
                    stamp_[y] = round_;
                    dist_[y] = dist_[x] + 1;
                    queue_.push_back(y);
                }
            }
        }
    }

private:
    const Graph& g_;
    std::vector<std::uint32_t> stamp_, dist_;
    std::vector<Vertex> queue_;
    std::uint32_t round_ = 0;
};

double require_param(const std::map<std::string, double>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw invalid_parameter("missing factor parameter '" + key + "'");
    return it->second;
}

double require_probability(const std::map<std::string, double>& params, const std::string& key) {
    const double p = require_param(params, key);
    if (!(p >= 0.0 && p <= 1.0))
        throw invalid_parameter("factor parameter '" + key + "' must lie in [0,1]");
    return p;
}

std::uint32_t require_radius(const std::map<std::string, double>& params, const std::string& key) {
    const double r = require_param(params, key);
    if (r != std::floor(r) || r < 0 || r > 8)
        throw invalid_parameter("factor parameter '" + key + "' must be an integer in 0..8");
    return static_cast<std::uint32_t>(r);
}

void reject_unknown_keys(const std::map<std::string, double>& params,
                         std::initializer_list<const char*> known) {
    for (const auto& [k, v] : params) {
        bool ok = false;
        for (const char* name : known)
            if (k == name) { ok = true; break; }
        if (!ok) throw invalid_parameter("unknown factor parameter '" + k + "'");
    }
}

const std::vector<std::string> kOpenClosed{"closed", "open"};

struct BernoulliThreshold final : BlockFactor {
    double p;
    explicit BernoulliThreshold(std::map<std::string, double> params)
        : BlockFactor("bernoulli_threshold", 0, params, kOpenClosed),
          p(require_probability(params, "p")) {
        reject_unknown_keys(params, {"p"});
    }
    Symbol evaluate(const RootedBall& b) const override { return b.labels[0] <= p ? 1 : 0; }
    void apply(const Graph&, const LabelField& f, std::span<Symbol> out) const override {
        simd::threshold_indicator(f.labels.data(), out.size(), p, out.data());
    }
};

struct RedBlue final : BlockFactor {
    explicit RedBlue(std::map<std::string, double> params)
        : BlockFactor("red_blue", 0, params, {"uncoloured", "red", "blue"}) {
        reject_unknown_keys(params, {});
    }
    Symbol evaluate(const RootedBall& b) const override {
        const double u = b.labels[0];
        return u <= 0.5 ? 1 : (u >= 0.6 ? 2 : 0);
    }
    void apply(const Graph&, const LabelField& f, std::span<Symbol> out) const override {
        simd::band_classify(f.labels.data(), out.size(), 0.5, 0.6, out.data());
    }
};

struct BallUnion final : BlockFactor {
    double p_seed;
    explicit BallUnion(std::map<std::string, double> params)
        : BlockFactor("ball_union", require_radius(params, "r"), params, kOpenClosed),
          p_seed(require_probability(params, "p_seed")) {
        reject_unknown_keys(params, {"r", "p_seed"});
    }
    Symbol evaluate(const RootedBall& b) const override {
        for (double u : b.labels)
            if (u <= p_seed) return 1;
        return 0;
    }
    void apply(const Graph& g, const LabelField& f, std::span<Symbol> out) const override {
        BallScanner scanner(g);
        for (Vertex v = 0; v < out.size(); ++v) {
            Symbol open = 0;
            scanner.scan(v, radius(), [&](Vertex u) {
                if (f.labels[u] <= p_seed) open = 1;
            });
            out[v] = open;
        }
    }
};

struct LocalMinForest final : BlockFactor {
    explicit LocalMinForest(std::map<std::string, double> params)
        : BlockFactor("local_min_forest", require_radius(params, "r"), params, kOpenClosed) {
        reject_unknown_keys(params, {"r"});
    }
    // Open iff the root label is not the maximum within distance r.
    Symbol evaluate(const RootedBall& b) const override {
        const double mine = b.labels[0];
        for (double u : b.labels)
            if (u > mine) return 1;
        return 0;
    }
    void apply(const Graph& g, const LabelField& f, std::span<Symbol> out) const override {
        BallScanner scanner(g);
        for (Vertex v = 0; v < out.size(); ++v) {
            const double mine = f.labels[v];
            Symbol open = 0;
            scanner.scan(v, radius(), [&](Vertex u) {
                if (f.labels[u] > mine) open = 1;
            });
            out[v] = open;
        }
    }
};

struct TwoColourThreshold final : BlockFactor {
    double t;
    explicit TwoColourThreshold(std::map<std::string, double> params)
        : BlockFactor("two_colour_threshold", 0, params, {"0", "1"}),
          t(require_probability(params, "t")) {
        reject_unknown_keys(params, {"t"});
    }
    Symbol evaluate(const RootedBall& b) const override { return b.labels[0] <= t ? 1 : 0; }
    void apply(const Graph&, const LabelField& f, std::span<Symbol> out) const override {
        simd::threshold_indicator(f.labels.data(), out.size(), t, out.data());
    }
};

} // namespace

void BlockFactor::apply(const Graph& g, const LabelField& f, std::span<Symbol> out) const {
    for (Vertex v = 0; v < out.size(); ++v)
        out[v] = evaluate(ball(g, v, radius_, f.labels));
}

std::string BlockFactor::spec_string() const {
    std::string s = id_;
    char sep = ':';
    for (const auto& [k, v] : params_) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%c%s=%.17g", sep, k.c_str(), v);
        s += buf;
        sep = ',';
    }
    return s;
}

Symbol BlockFactor::symbol_index(const std::string& name) const {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
        if (alphabet_[i] == name) return static_cast<Symbol>(i);
    throw invalid_parameter("unknown symbol '" + name + "' for rule " + id_);
}

VertexSet Configuration::support(Symbol s) const {
    VertexSet out(static_cast<std::uint32_t>(symbols.size()));
    for (Vertex v = 0; v < symbols.size(); ++v)
        if (symbols[v] == s) out.insert(v);
    return out;
}

std::uint64_t Configuration::count(Symbol s) const {
    return simd::count_eq(symbols.data(), symbols.size(), s);
}

std::unique_ptr<BlockFactor> make_factor(const std::string& spec) {
    std::string id = spec;
    std::map<std::string, double> params;
    if (const auto colon = spec.find(':'); colon != std::string::npos) {
        id = spec.substr(0, colon);
        std::string rest = spec.substr(colon + 1);
        std::istringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw invalid_parameter("bad factor parameter '" + item + "' (want key=val)");
            const std::string key = item.substr(0, eq);
            try {
                params[key] = std::stod(item.substr(eq + 1));
            } catch (const std::exception&) {
                throw invalid_parameter("bad numeric value in factor parameter '" + item + "'");
            }
        }
    }
    if (id == "bernoulli_threshold") return std::make_unique<BernoulliThreshold>(params);
    if (id == "red_blue") return std::make_unique<RedBlue>(params);
    if (id == "ball_union") return std::make_unique<BallUnion>(params);
    if (id == "local_min_forest") return std::make_unique<LocalMinForest>(params);
    if (id == "two_colour_threshold") return std::make_unique<TwoColourThreshold>(params);
    throw invalid_parameter("unknown rule_id '" + id + "'");
}

std::vector<FactorInfo> builtin_factor_catalog() {
    return {
        {"bernoulli_threshold", 0, "p in [0,1]", "bernoulli_threshold:p=0.5"},
        {"red_blue", 0, "(none)", "red_blue"},
        {"ball_union", 1, "r integer in 0..8, p_seed in [0,1]", "ball_union:r=1,p_seed=0.1"},
        {"local_min_forest", 1, "r integer in 0..8", "local_min_forest:r=1"},
        {"two_colour_threshold", 0, "t in [0,1]", "two_colour_threshold:t=0.5"},
    };
}

Configuration apply_factor(const Graph& g, const LabelField& f, const BlockFactor& b) {
    if (f.labels.size() != g.num_vertices())
        throw invalid_parameter("label field does not match graph");
    Configuration c;
    c.symbols.resize(g.num_vertices());
    c.alphabet = b.alphabet();
    c.factor_spec = b.spec_string();
    c.radius = b.radius();
    c.label_seed = f.seed;
    b.apply(g, f, c.symbols);
    // spot-check the ball contract on a strided sample
    const std::uint32_t n = g.num_vertices();
    const std::uint32_t checks = std::min<std::uint32_t>(n, 8);
    for (std::uint32_t i = 0; i < checks; ++i) {
        const Vertex v = static_cast<Vertex>((std::uint64_t(i) * n) / checks);
        const Symbol want = b.evaluate(ball(g, v, b.radius(), f.labels));
        if (c.symbols[v] != want)
            throw std::logic_error("factor fast path disagrees with ball evaluation");
    }
    return c;
}

void write_configuration(const Configuration& c, std::ostream& os) {
    nlohmann::json header{{"rule", c.factor_spec},
                          {"radius", c.radius},
                          {"seed", c.label_seed},
                          {"n", c.symbols.size()},
                          {"alphabet", c.alphabet}};
    os << header.dump() << '\n';
    std::size_t i = 0;
    bool first = true;
    while (i < c.symbols.size()) {
        std::size_t j = i;
        while (j < c.symbols.size() && c.symbols[j] == c.symbols[i]) ++j;
        os << (first ? "" : " ") << int(c.symbols[i]) << '*' << (j - i);
        first = false;
        i = j;
    }
    os << '\n';
}

Configuration read_configuration(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw io_error("configuration: missing header");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
        throw io_error(std::string("configuration: bad header: ") + e.what());
    }
    Configuration c;
    c.factor_spec = header.at("rule").get<std::string>();
    c.radius = header.at("radius").get<std::uint32_t>();
    c.label_seed = header.at("seed").get<std::uint64_t>();
    c.alphabet = header.at("alphabet").get<std::vector<std::string>>();
    const auto n = header.at("n").get<std::size_t>();
    c.symbols.reserve(n);
    if (!std::getline(is, line)) throw io_error("configuration: missing run data");
    std::istringstream ss(line);
    std::string run;
    while (ss >> run) {
        const auto star = run.find('*');
        if (star == std::string::npos) throw io_error("configuration: bad run '" + run + "'");
        const int sym = std::stoi(run.substr(0, star));
        const std::size_t len = std::stoull(run.substr(star + 1));
        if (sym < 0 || sym >= static_cast<int>(c.alphabet.size()))
            throw io_error("configuration: symbol out of range");
        c.symbols.insert(c.symbols.end(), len, static_cast<Symbol>(sym));
    }
    if (c.symbols.size() != n) throw io_error("configuration: run lengths do not sum to n");
    return c;
}

} // namespace fiidlab
