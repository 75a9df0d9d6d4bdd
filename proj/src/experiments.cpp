#include "fiidlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "fiidlab/adversarial.hpp"
#include "fiidlab/bounds.hpp"
#include "fiidlab/errors.hpp"
#include "fiidlab/expansion.hpp"
#include "fiidlab/factors.hpp"
#include "fiidlab/graph.hpp"
#include "fiidlab/labels.hpp"
#include "fiidlab/percolation.hpp"
#include "fiidlab/rng.hpp"
#include "fiidlab/spectral.hpp"
#include "fiidlab/stars.hpp"
#include "fiidlab/stats.hpp"
#include "fiidlab/walks.hpp"
#include "fiidlab/wilson.hpp"

namespace fiidlab {

namespace {

double extra_or(const ExperimentSpec& spec, const std::string& key, double fallback) {
    auto it = spec.extra.find(key);
    return it == spec.extra.end() ? fallback : it->second;
}

Graph build_graph(const ExperimentSpec& spec, std::uint64_t seed) {
    if (spec.model == "configuration")
        return generate_configuration_model(spec.n, spec.d, seed);
    return generate_permutation_model(spec.n, spec.k, seed);
}

std::vector<double> linear_grid(double lo, double hi, std::uint32_t points) {
    std::vector<double> g(points);
    for (std::uint32_t i = 0; i < points; ++i)
        g[i] = lo + (hi - lo) * double(i) / double(points - 1);
    g.back() = hi;
    return g;
}

// Seed-indexed jobs on a small thread pool; results land in job order.
void parallel_jobs(std::uint32_t njobs, std::uint32_t threads,
                   const std::function<void(std::uint32_t)>& fn) {
    if (threads <= 1 || njobs <= 1) {
        for (std::uint32_t j = 0; j < njobs; ++j) fn(j);
        return;
    }
    std::atomic<std::uint32_t> next{0};
    std::vector<std::thread> pool;
    const std::uint32_t workers = std::min(threads, njobs);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::uint32_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const std::uint32_t j = next.fetch_add(1);
                if (j >= njobs) return;
                try {
                    fn(j);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// ---- exp-redblue-pc -------------------------------------------------------

std::vector<ResultRecord> exp_redblue_pc(const ExperimentSpec& spec) {
    const double tau = extra_or(spec, "tau", 0.05);
    const auto min_cluster = static_cast<std::uint32_t>(extra_or(spec, "min_cluster", 1000));
    const std::vector<double> p_grid = linear_grid(0.01, 1.0, 100);
    std::vector<ResultRecord> records(spec.seeds.size());
    parallel_jobs(static_cast<std::uint32_t>(spec.seeds.size()), spec.threads, [&](std::uint32_t i) {
        Timer timer;
        const std::uint64_t seed = spec.seeds[i];
        const Graph g = build_graph(spec, seed);
        const LabelField field = sample_labels(g, seed);
        PcSweepOptions opts{tau, min_cluster};
        ResultRecord rec;
        rec.experiment = spec.name;
        rec.spec_hash = spec.spec_hash();
        rec.seed = seed;
        {
            const auto full = make_factor("bernoulli_threshold:p=1");
            const Configuration c = apply_factor(g, field, *full);
            const auto sweep = pc_sweep(g, c, full->symbol_index("open"), p_grid,
                                        spec.replicas, seed, opts);
            rec.estimates["p_c_full"] = sweep.p_c_estimate;
            rec.stderrs["p_c_full"] = sweep.p_c_stderr;
        }
        const auto rb = make_factor("red_blue");
        const Configuration c = apply_factor(g, field, *rb);
        for (const char* colour : {"red", "blue"}) {
            const auto sweep = pc_sweep(g, c, rb->symbol_index(colour), p_grid,
                                        spec.replicas, seed, opts);
            rec.estimates[std::string("p_c_") + colour] = sweep.p_c_estimate;
            rec.stderrs[std::string("p_c_") + colour] = sweep.p_c_stderr;
        }
        rec.meta["pc_estimator"] = "tau-crossing, linear interpolation";
        rec.wall_ms = timer.ms();
        records[i] = std::move(rec);
    });
    return records;
}

// ---- exp-sit-frontier -----------------------------------------------------

const std::vector<std::string>& frontier_factor_sweep() {
    static const std::vector<std::string> sweep = [] {
        std::vector<std::string> s;
        for (double p : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "bernoulli_threshold:p=%g", p);
            s.emplace_back(buf);
        }
        for (double ps : {0.02, 0.05, 0.1, 0.2, 0.4, 0.6}) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "ball_union:r=1,p_seed=%g", ps);
            s.emplace_back(buf);
        }
        for (double ps : {0.005, 0.01, 0.02, 0.05}) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "ball_union:r=2,p_seed=%g", ps);
            s.emplace_back(buf);
        }
        s.emplace_back("local_min_forest:r=1");
        s.emplace_back("local_min_forest:r=2");
        for (double t : {0.3, 0.5, 0.7, 0.9}) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "two_colour_threshold:t=%g", t);
            s.emplace_back(buf);
        }
        s.emplace_back("red_blue");
        return s;
    }();
    return sweep;
}

std::vector<ResultRecord> exp_sit_frontier(const ExperimentSpec& spec) {
    const auto& sweep = frontier_factor_sweep();
    std::vector<ResultRecord> records(spec.seeds.size() * sweep.size());
    parallel_jobs(static_cast<std::uint32_t>(spec.seeds.size()), spec.threads, [&](std::uint32_t i) {
        const std::uint64_t seed = spec.seeds[i];
        const Graph g = build_graph(spec, seed);
        const LabelField field = sample_labels(g, seed);
        for (std::size_t fi = 0; fi < sweep.size(); ++fi) {
            Timer timer;
            const auto factor = make_factor(sweep[fi]);
            const Configuration c = apply_factor(g, field, *factor);
            // red_blue contributes its red symbol; binary factors their open one
            const Symbol sym = factor->id() == "red_blue" ? factor->symbol_index("red")
                               : factor->id() == "two_colour_threshold"
                                   ? factor->symbol_index("1")
                                   : factor->symbol_index("open");
            const DensityReport dr = density_report(g, c, sym);
            ResultRecord rec;
            rec.experiment = spec.name;
            rec.spec_hash = spec.spec_hash();
            rec.seed = seed;
            rec.meta["factor"] = sweep[fi];
            rec.estimates["density"] = dr.density;
            rec.estimates["cond_avg_degree"] = dr.conditional_avg_degree;
            const double se = std::sqrt(dr.density * (1.0 - dr.density) / g.num_vertices());
            rec.stderrs["density"] = se;
            const double delta_hat = dr.conditional_avg_degree - 2.0;
            double violation = 0.0;
            if (dr.avg_degree_defined && delta_hat > 0.0) {
                const double delta_cl = std::min(delta_hat, double(spec.d) - 2.0);
                const BoundPoint c_bound = sparse_min_density(spec.d, delta_cl, 1e-9);
                rec.estimates["c_bound"] = c_bound.value;
                if (dr.density < c_bound.value - 3.0 * se) violation = 1.0;
            }
            rec.estimates["violates_frontier"] = violation;
            rec.wall_ms = timer.ms();
            records[i * sweep.size() + fi] = std::move(rec);
        }
    });
    return records;
}

// ---- exp-adversarial ------------------------------------------------------

std::vector<ResultRecord> exp_adversarial(const ExperimentSpec& spec) {
    const std::vector<double> eps_list{0.005, 0.01, 0.02, 0.05};
    AnnealSchedule schedule;
    schedule.iterations = static_cast<std::uint32_t>(extra_or(spec, "iterations", 20000));
    schedule.restarts = static_cast<std::uint32_t>(extra_or(spec, "restarts", 3));
    const BoundPoint guard = sparse_min_density(spec.d, 0.2, 1e-9);
    std::vector<ResultRecord> records(spec.seeds.size() * eps_list.size());
    parallel_jobs(static_cast<std::uint32_t>(spec.seeds.size()), spec.threads, [&](std::uint32_t i) {
        const std::uint64_t seed = spec.seeds[i];
        const Graph g = build_graph(spec, seed);
        for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
            Timer timer;
            const auto res = adversarial_subgraph_search(g, eps_list[ei], schedule, seed);
            ResultRecord rec;
            rec.experiment = spec.name;
            rec.spec_hash = spec.spec_hash();
            rec.seed = seed;
            rec.estimates["eps"] = eps_list[ei];
            rec.estimates["avg_degree"] = res.avg_degree;
            rec.estimates["density"] = res.density;
            rec.estimates["violates_guarantee"] =
                (res.avg_degree >= 2.2 && res.density < guard.value - 1e-9) ? 1.0 : 0.0;
            rec.wall_ms = timer.ms();
            records[i * eps_list.size() + ei] = std::move(rec);
        }
    });
    return records;
}

// ---- exp-entropy-star -----------------------------------------------------

std::vector<ResultRecord> exp_entropy_star(const ExperimentSpec& spec) {
    const std::vector<std::string> factors{
        "bernoulli_threshold:p=0.3", "bernoulli_threshold:p=0.5", "red_blue",
        "ball_union:r=1,p_seed=0.1", "local_min_forest:r=1", "two_colour_threshold:t=0.5"};
    const auto bootstrap =
        static_cast<std::uint32_t>(extra_or(spec, "bootstrap", 200));
    std::vector<ResultRecord> records(spec.seeds.size() * factors.size());
    parallel_jobs(static_cast<std::uint32_t>(spec.seeds.size()), spec.threads, [&](std::uint32_t i) {
        const std::uint64_t seed = spec.seeds[i];
        const Graph g = build_graph(spec, seed);
        const LabelField field = sample_labels(g, seed);
        for (std::size_t fi = 0; fi < factors.size(); ++fi) {
            Timer timer;
            const auto factor = make_factor(factors[fi]);
            const Configuration c = apply_factor(g, field, *factor);
            const VertexSet region = tree_like_vertices(g, factor->radius() + 1);
            const StarSample stars = collect_stars(g, c, region);
            const auto report =
                star_entropy_check(stars, double(spec.d) - 1.0, bootstrap, seed);
            ResultRecord rec;
            rec.experiment = spec.name;
            rec.spec_hash = spec.spec_hash();
            rec.seed = seed;
            rec.meta["factor"] = factors[fi];
            rec.estimates["star_entropy"] = report.star_entropy;
            rec.estimates["root_entropy"] = report.root_entropy;
            rec.estimates["margin"] = report.margin;
            rec.estimates["unordered_star_entropy"] = report.unordered_star_entropy;
            rec.estimates["kappa_hat"] = report.kappa_hat;
            rec.stderrs["star_entropy"] = report.se_star;
            rec.stderrs["root_entropy"] = report.se_root;
            rec.stderrs["margin"] = report.se_margin;
            rec.estimates["tree_region_fraction"] =
                double(region.size()) / g.num_vertices();
            rec.wall_ms = timer.ms();
            records[i * factors.size() + fi] = std::move(rec);
        }
    });
    return records;
}

// ---- exp-dense-threshold --------------------------------------------------

std::vector<ResultRecord> exp_dense_threshold(const ExperimentSpec& spec) {
    std::vector<ResultRecord> records;
    const std::vector<double> gamma_list{0.5, 1.0, 2.0};
    const std::vector<double> delta_grid{1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
    for (double gamma : gamma_list) {
        for (double delta : delta_grid) {
            Timer timer;
            const BoundPoint pt = dense_max_closed_density(delta, gamma, spec.d, 1e-9);
            ResultRecord rec;
            rec.experiment = spec.name;
            rec.spec_hash = spec.spec_hash();
            rec.seed = 0;
            rec.estimates["gamma"] = gamma;
            rec.estimates["delta"] = delta;
            rec.estimates["eps_star"] = pt.value;
            rec.estimates["guaranteed_density"] = 1.0 - pt.value;
            rec.estimates["envelope"] = 2.0 * spec.d / gamma * delta;
            rec.estimates["sign_changes"] = double(pt.sign_changes.size());
            rec.wall_ms = timer.ms();
            records.push_back(std::move(rec));
        }
    }
    // one high-degree factor point for context
    const std::uint64_t seed = spec.seeds.empty() ? 1 : spec.seeds.front();
    const Graph g = build_graph(spec, seed);
    const LabelField field = sample_labels(g, seed);
    const auto factor = make_factor("ball_union:r=2,p_seed=0.2");
    const Configuration c = apply_factor(g, field, *factor);
    const DensityReport dr = density_report(g, c, factor->symbol_index("open"));
    ResultRecord rec;
    rec.experiment = spec.name;
    rec.spec_hash = spec.spec_hash();
    rec.seed = seed;
    rec.meta["factor"] = "ball_union:r=2,p_seed=0.2";
    rec.estimates["density"] = dr.density;
    rec.estimates["cond_avg_degree"] = dr.conditional_avg_degree;
    rec.estimates["degree_deficit"] = 1.0 - dr.conditional_avg_degree / spec.d;
    records.push_back(std::move(rec));
    return records;
}

// ---- exp-expander-bound ---------------------------------------------------

std::vector<ResultRecord> exp_expander_bound(const ExperimentSpec& spec) {
    struct Bed {
        const char* name;
        Graph graph;
    };
    std::vector<Bed> beds;
    beds.push_back({"K4", make_complete(4)});
    beds.push_back({"K5", make_complete(5)});
    beds.push_back({"Q3", make_hypercube(3)});
    beds.push_back({"Q4", make_hypercube(4)});
    beds.push_back({"petersen", make_petersen()});
    std::vector<ResultRecord> records;
    for (const auto& bed : beds) {
        Timer timer;
        const auto spectral = spectral_gap(bed.graph, 1e-10, 50000);
        const double h_exact = edge_cheeger_exhaustive(bed.graph);
        // exhaustive check of the density guarantee over all subsets
        const std::uint32_t n = bed.graph.num_vertices();
        const std::uint32_t d = bed.graph.degree();
        double worst_margin = 1e9;
        for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
            std::uint32_t size = 0;
            std::uint64_t internal2 = 0;
            for (std::uint32_t m2 = mask; m2; m2 &= m2 - 1) {
                const Vertex v = static_cast<Vertex>(std::countr_zero(m2));
                ++size;
                for (std::uint32_t s2 = 0; s2 < d; ++s2)
                    if ((mask >> bed.graph.neighbour(v, s2)) & 1) ++internal2;
            }
            const double avg = double(internal2) / size;
            const double delta = 1.0 - avg / d;
            const double guarantee = expander_density_bound(delta, d, h_exact);
            worst_margin = std::min(worst_margin, double(size) / n - guarantee);
        }
        ResultRecord rec;
        rec.experiment = spec.name;
        rec.spec_hash = spec.spec_hash();
        rec.seed = 0;
        rec.meta["graph"] = bed.name;
        rec.estimates["lambda2"] = spectral.lambda2;
        rec.estimates["cheeger_lower_bound"] = spectral.cheeger_lower_bound;
        rec.estimates["h_edge_exact"] = h_exact;
        rec.estimates["worst_density_margin"] = worst_margin;
        rec.wall_ms = timer.ms();
        records.push_back(std::move(rec));
    }
    return records;
}

// ---- exp-wusf-majority ----------------------------------------------------

std::vector<ResultRecord> exp_wusf_majority(const ExperimentSpec& spec) {
    const auto max_window = static_cast<std::uint32_t>(extra_or(spec, "max_window", 20));
    std::vector<ResultRecord> records(spec.seeds.size());
    parallel_jobs(static_cast<std::uint32_t>(spec.seeds.size()), spec.threads, [&](std::uint32_t i) {
        Timer timer;
        const std::uint64_t seed = spec.seeds[i];
        const Graph g = generate_permutation_model(spec.n, spec.k, seed);
        ResultRecord rec;
        rec.experiment = spec.name;
        rec.spec_hash = spec.spec_hash();
        rec.seed = seed;
        rec.meta["path_convention"] = "to_root";
        if (!is_connected(g)) {
            rec.meta["skipped"] = "permutation sample disconnected";
            records[i] = std::move(rec);
            return;
        }
        const SpanningTree tree = wilson_ust(g, 0, seed);
        const std::uint32_t need = 2 * max_window + 1;
        // majority bit per window for every vertex deep enough; the all-pairs
        // disagreement is then exactly 2 q_w (1 - q_w) with q_w the bit mean,
        // so no pair sampling enters at all
        std::vector<std::uint64_t> ones(max_window + 1, 0);
        std::uint64_t deep = 0;
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            if (tree.depth(v) < need) continue;
            ++deep;
            std::uint32_t family1 = 0;
            Vertex u = v;
            for (std::uint32_t e = 1; e <= need; ++e) {
                if (tag_generator(g.tag(tree.parent_edge[u])) == 1) ++family1;
                u = tree.parent[u];
                if (e % 2 == 1 && e >= 3 && 2 * family1 > e) ++ones[e / 2];
            }
        }
        if (deep < 100) {
            rec.meta["skipped"] = "tree too shallow for the window";
            records[i] = std::move(rec);
            return;
        }
        std::vector<double> disagreement(max_window + 1, 0.0);
        for (std::uint32_t w = 1; w <= max_window; ++w) {
            const double q = double(ones[w]) / double(deep);
            disagreement[w] = 2.0 * q * (1.0 - q);
            char key[32];
            std::snprintf(key, sizeof key, "D_%02u", w);
            rec.estimates[key] = disagreement[w];
        }
        rec.estimates["deep_vertices"] = double(deep);
        double head = 0.0, tail = 0.0;
        const std::uint32_t block = std::max(1u, max_window / 4);
        for (std::uint32_t w = 1; w <= block; ++w) head += disagreement[w];
        for (std::uint32_t w = max_window - block + 1; w <= max_window; ++w)
            tail += disagreement[w];
        rec.estimates["head_mean"] = head / block;
        rec.estimates["tail_mean"] = tail / block;
        rec.estimates["decline"] = (head - tail) / block;
        rec.estimates["decreasing"] = tail < head ? 1.0 : 0.0;
        rec.wall_ms = timer.ms();
        records[i] = std::move(rec);
    });
    return records;
}

// ---- exp-birkhoff ---------------------------------------------------------

std::vector<ResultRecord> exp_birkhoff(const ExperimentSpec& spec) {
    const double colour_t = extra_or(spec, "t", 0.4);
    const auto chi2_steps = static_cast<std::uint64_t>(extra_or(spec, "chi2_steps", 32));
    std::vector<ResultRecord> records(spec.seeds.size());
    parallel_jobs(static_cast<std::uint32_t>(spec.seeds.size()), spec.threads, [&](std::uint32_t i) {
        Timer timer;
        const std::uint64_t seed = spec.seeds[i];
        const Graph g = build_graph(spec, seed);
        const LabelField field = sample_labels(g, seed);
        ResultRecord rec;
        rec.experiment = spec.name;
        rec.spec_hash = spec.spec_hash();
        rec.seed = seed;
        // chi^2 stationarity on the largest cluster of a bernoulli factor
        {
            const auto factor = make_factor("bernoulli_threshold:p=0.7");
            const Configuration c = apply_factor(g, field, *factor);
            const Symbol open = factor->symbol_index("open");
            const Clustering clusters = connected_components(g, c.support(open));
            std::uint32_t best = 0;
            for (std::uint32_t id = 1; id < clusters.sizes.size(); ++id)
                if (clusters.sizes[id] > clusters.sizes[best]) best = id;
            const auto& cluster = clusters.members[best];
            const auto m = static_cast<std::uint32_t>(cluster.size());
            const std::uint64_t walks = std::uint64_t(20) * m;
            std::vector<std::uint64_t> tally(m, 0);
            std::vector<std::uint32_t> index_in_cluster(g.num_vertices(), 0);
            for (std::uint32_t idx = 0; idx < m; ++idx) index_in_cluster[cluster[idx]] = idx;
            rng::Stream64 starts(seed, rng::substream(rng::kWalk, 7));
            for (std::uint64_t wk = 0; wk < walks; ++wk) {
                const Vertex start = cluster[starts.next_below(m)];
                const Vertex end = delayed_srw_endpoint(g, c, open, start, chi2_steps,
                                                        seed ^ (wk * 0x9E37u + 1));
                ++tally[index_in_cluster[end]];
            }
            double stat = 0.0;
            const double expected = double(walks) / m;
            for (std::uint32_t idx = 0; idx < m; ++idx) {
                const double diff = double(tally[idx]) - expected;
                stat += diff * diff / expected;
            }
            const double crit = chi2_quantile(0.99, double(m - 1));
            rec.estimates["chi2_stat"] = stat;
            rec.estimates["chi2_crit"] = crit;
            rec.estimates["chi2_pass"] = stat <= crit ? 1.0 : 0.0;
            rec.estimates["cluster_size"] = m;
        }
        // Birkhoff average of a two-colouring along the full-graph walk
        {
            char spec_buf[64];
            std::snprintf(spec_buf, sizeof spec_buf, "two_colour_threshold:t=%g", colour_t);
            const auto colour = make_factor(spec_buf);
            const Configuration col = apply_factor(g, field, *colour);
            const auto full = make_factor("bernoulli_threshold:p=1");
            const Configuration all = apply_factor(g, field, *full);
            const std::uint64_t steps = static_cast<std::uint64_t>(extra_or(spec, "steps", 200000));
            const WalkSample walk = delayed_srw(g, all, full->symbol_index("open"),
                                                static_cast<Vertex>(seed % g.num_vertices()),
                                                steps, seed);
            const BirkhoffResult bk = birkhoff_average(walk, col);
            std::vector<double> series(walk.trajectory.size());
            for (std::size_t t2 = 0; t2 < walk.trajectory.size(); ++t2)
                series[t2] = col.symbols[walk.trajectory[t2]];
            const double se_walk = batch_means_stderr(series, 32);
            const double se_pop =
                std::sqrt(colour_t * (1.0 - colour_t) / g.num_vertices());
            const double se = std::sqrt(se_walk * se_walk + se_pop * se_pop);
            rec.estimates["birkhoff_mean"] = bk.final_mean;
            rec.estimates["birkhoff_target"] = colour_t;
            rec.stderrs["birkhoff_mean"] = se;
            rec.estimates["birkhoff_pass"] =
                std::fabs(bk.final_mean - colour_t) <= 3.0 * se ? 1.0 : 0.0;
        }
        rec.wall_ms = timer.ms();
        records[i] = std::move(rec);
    });
    return records;
}

using ExperimentFn = std::vector<ResultRecord> (*)(const ExperimentSpec&);

const std::map<std::string, ExperimentFn>& registry() {
    static const std::map<std::string, ExperimentFn> reg{
        {"exp-redblue-pc", exp_redblue_pc},
        {"exp-sit-frontier", exp_sit_frontier},
        {"exp-adversarial", exp_adversarial},
        {"exp-entropy-star", exp_entropy_star},
        {"exp-dense-threshold", exp_dense_threshold},
        {"exp-expander-bound", exp_expander_bound},
        {"exp-wusf-majority", exp_wusf_majority},
        {"exp-birkhoff", exp_birkhoff},
    };
    return reg;
}

} // namespace

std::string ExperimentSpec::canonical_string() const {
    std::string s = name + "|" + model + "|n=" + std::to_string(n) +
                    "|d=" + std::to_string(d) + "|k=" + std::to_string(k) +
                    "|factor=" + factor_spec + "|replicas=" + std::to_string(replicas);
    s += "|seeds=";
    for (std::uint64_t sd : seeds) s += std::to_string(sd) + ",";
    for (const auto& [key, val] : extra) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "|%s=%.17g", key.c_str(), val);
        s += buf;
    }
    return s;
}

std::uint64_t ExperimentSpec::spec_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : canonical_string()) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

void ExperimentSpec::validate() const {
    if (!is_registered_experiment(name))
        throw invalid_parameter("unknown experiment '" + name + "'");
    if (model != "configuration" && model != "permutation")
        throw invalid_parameter("model must be 'configuration' or 'permutation'");
    if (n < 2) throw invalid_parameter("experiment needs n >= 2");
    if (seeds.empty()) throw invalid_parameter("experiment needs at least one seed");
    if (replicas < 1) throw invalid_parameter("experiment needs replicas >= 1");
    if (threads < 1) throw invalid_parameter("experiment needs threads >= 1");
}

std::string ResultRecord::to_json_line() const {
    nlohmann::json j;
    j["op"] = experiment;
    j["spec_hash"] = spec_hash;
    j["seed"] = seed;
    j["estimates"] = estimates;
    j["stderr"] = stderrs;
    if (!meta.empty()) j["params"] = meta;
    j["wall_ms"] = wall_ms;
    return j.dump();
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [k, v] : registry()) out.push_back(k);
        return out;
    }();
    return names;
}

bool is_registered_experiment(const std::string& name) {
    return registry().count(name) > 0;
}

std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    return registry().at(spec.name)(spec);
}

void write_jsonl(const std::vector<ResultRecord>& records, std::ostream& os) {
    for (const auto& r : records) os << r.to_json_line() << '\n';
}

} // namespace fiidlab
