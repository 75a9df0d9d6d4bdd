// Acceptance suite: one criterion per invocation (argv[1] in 1..10, or
// "all"). Prints one PASS/FAIL line per criterion; exit code is the number
// of failed criteria.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "fiidlab/adversarial.hpp"
#include "fiidlab/bounds.hpp"
#include "fiidlab/entropy.hpp"
#include "fiidlab/errors.hpp"
#include "fiidlab/expansion.hpp"
#include "fiidlab/experiments.hpp"
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
#include "oracles.hpp"

using namespace fiidlab;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

// 1. Red/blue p_c reproduction on G(10^6, 4) over 8 seeds, +-0.02, <= 15 min.
Verdict criterion1() {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentSpec spec;
    spec.name = "exp-redblue-pc";
    spec.n = 1000000;
    spec.d = 4;
    spec.replicas = 2;
    spec.seeds = {1, 2, 3, 4, 5, 6, 7, 8};
    const auto records = run_experiment(spec);
    std::vector<double> full, red, blue;
    for (const auto& r : records) {
        full.push_back(r.estimates.at("p_c_full"));
        red.push_back(r.estimates.at("p_c_red"));
        blue.push_back(r.estimates.at("p_c_blue"));
    }
    const double mean_full = summarize(full).mean;
    const double mean_red = summarize(red).mean;
    const double mean_blue = summarize(blue).mean;
    const double minutes =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 60.0;
    v.note(fmt("p_c full=%.4f red=%.4f blue=%.4f (targets 0.3333/0.6667/0.8333), %.1f min",
               mean_full, mean_red, mean_blue, minutes));
    if (std::fabs(mean_full - 1.0 / 3.0) > 0.02) v.fail("full-graph p_c outside 1/3 +- 0.02");
    if (std::fabs(mean_red - 2.0 / 3.0) > 0.02) v.fail("red p_c outside 2/3 +- 0.02");
    if (std::fabs(mean_blue - 5.0 / 6.0) > 0.02) v.fail("blue p_c outside 5/6 +- 0.02");
    if (minutes > 15.0) v.fail("runtime exceeded 15 minutes");
    return v;
}

// 2. Exact identities to 1e-12: chain rule on >= 10^4 joints, both
// bookkeeping identities on 10^4 random triples.
Verdict criterion2() {
    Verdict v;
    std::uint64_t chain_cases = 0;
    double worst_chain = 0.0;
    for (const auto& [rows, cols, total] :
         {std::tuple{2, 2, 8}, {2, 3, 7}, {3, 3, 5}, {4, 4, 4}, {4, 4, 5}}) {
        const int cells = rows * cols;
        std::vector<int> counts(cells, 0);
        std::function<void(int, int)> rec = [&](int cell, int left) {
            if (cell == cells - 1) {
                counts[cell] = left;
                std::vector<std::pair<std::string, std::string>> sup;
                std::vector<double> pr;
                for (int r = 0; r < rows; ++r)
                    for (int c2 = 0; c2 < cols; ++c2)
                        if (counts[r * cols + c2] > 0) {
                            sup.push_back({std::to_string(r), std::to_string(c2)});
                            pr.push_back(double(counts[r * cols + c2]) / total);
                        }
                if (sup.empty()) return;
                const JointDistribution j(sup, pr);
                for (int margin : {0, 1}) {
                    const double gap = std::fabs(
                        j.joint_entropy() -
                        (entropy(j.margin(margin)) + conditional_entropy(j, margin)));
                    worst_chain = std::max(worst_chain, gap);
                }
                ++chain_cases;
                return;
            }
            for (int k = 0; k <= left; ++k) {
                counts[cell] = k;
                rec(cell + 1, left - k);
            }
        };
        rec(0, total);
    }
    if (chain_cases < 10000) v.fail("fewer than 10^4 chain-rule cases enumerated");
    if (worst_chain > 1e-12) v.fail(fmt("chain rule residual %.3g > 1e-12", worst_chain));

    rng::Stream64 pick(77, 1);
    double worst_sparse = 0.0, worst_dense = 0.0;
    std::uint64_t ns = 0, nd = 0;
    while (ns < 10000 || nd < 10000) {
        const std::uint32_t d = 3 + pick.next_below(6);
        const double eps = 0.001 + 0.998 * pick.next_unit();
        if (ns < 10000) {
            const double delta = (d - 2) * pick.next_unit();
            try {
                const double kappa = open_rate_at_closed(eps, delta, d);
                worst_sparse = std::max(
                    worst_sparse,
                    std::fabs(d * eps - (eps * (2 + delta) + (1 - eps) * d * kappa)));
                ++ns;
            } catch (const invalid_parameter&) {
            }
        }
        if (nd < 10000) {
            const double delta = pick.next_unit();
            try {
                const double kappa = closed_rate_at_closed(eps, delta);
                worst_dense = std::max(
                    worst_dense,
                    std::fabs(d * eps - ((1 - eps) * d * delta + eps * d * kappa)));
                ++nd;
            } catch (const invalid_parameter&) {
            }
        }
    }
    if (worst_sparse > 1e-12) v.fail(fmt("sparse bookkeeping residual %.3g", worst_sparse));
    if (worst_dense > 1e-12) v.fail(fmt("dense bookkeeping residual %.3g", worst_dense));
    v.note(fmt("chain-rule cases=%llu worst=%.2g; bookkeeping worst sparse=%.2g dense=%.2g",
               (unsigned long long)chain_cases, worst_chain, worst_sparse, worst_dense));
    return v;
}

double sparse_oracle_scan(std::uint32_t d, double delta) {
    // smallest feasible density on a linear 10^5-point grid: the first
    // feasible grid point (midpoint with its predecessor); eps_max when the
    // whole domain is infeasible, 0 when even the first point is feasible
    // (the crossing sits below grid resolution).
    const double eps_max = std::min(1.0 - 1e-12, double(d) / (2.0 * d - 2.0 - delta));
    const int points = 100000;
    double prev = 0.0;
    for (int i = 1; i < points; ++i) {
        const double eps = eps_max * i / points;
        if (sparse_feasible(eps, delta, d).feasible)
            return i == 1 ? 0.0 : 0.5 * (prev + eps);
        prev = eps;
    }
    return eps_max;
}

double dense_oracle_scan(double delta, double gamma, std::uint32_t d) {
    const double lo = delta / (1.0 + delta);
    const int points = 100000;
    double best = lo;
    for (int i = 1; i < points; ++i) {
        const double eps = lo + (1.0 - lo) * i / points;
        if (eps >= 1.0) break;
        const auto check = dense_feasible(eps, delta, gamma, d);
        if (check.domain_ok && check.feasible) best = eps;
    }
    return best;
}

// 3. Solver vs independent 10^5-point scans within 1e-4, monotone c(4,.),
// and c(4,1e-3) < 1e-6.
Verdict criterion3() {
    Verdict v;
    double worst = 0.0;
    for (std::uint32_t d : {3u, 4u, 6u})
        for (double delta : {0.1, 0.5, 1.0}) {
            const double mine = sparse_min_density(d, delta, 1e-8).value;
            const double want = sparse_oracle_scan(d, delta);
            worst = std::max(worst, std::fabs(mine - want));
            if (std::fabs(mine - want) > 1e-4)
                v.fail(fmt("sparse solver/oracle gap %.2g at d=%u delta=%.2f",
                           std::fabs(mine - want), d, delta));
        }
    for (std::uint32_t d : {3u, 4u, 6u})
        for (double gamma : {0.1, 0.5, 1.0})
            for (double delta : {0.1, 1e-3}) {
                const double mine = dense_max_closed_density(delta, gamma, d, 1e-9).value;
                const double want = dense_oracle_scan(delta, gamma, d);
                worst = std::max(worst, std::fabs(mine - want));
                if (std::fabs(mine - want) > 1e-4)
                    v.fail(fmt("dense solver/oracle gap %.2g at d=%u gamma=%.2f delta=%g",
                               std::fabs(mine - want), d, gamma, delta));
            }
    double prev = -1.0;
    for (double delta = 0.05; delta <= 1.951; delta += 0.05) {
        const double c = sparse_min_density(4, delta, 1e-8).value;
        if (c < prev - 1e-12) v.fail(fmt("c(4,delta) not monotone at delta=%.2f", delta));
        prev = c;
    }
    const auto tiny = sparse_min_density(4, 1e-3, 1e-8);
    if (!(tiny.value < 1e-6)) v.fail("c(4,1e-3) not below 1e-6");
    v.note(fmt("worst solver/oracle gap %.2g; c(4,1e-3)=%.2g", worst, tiny.value));
    return v;
}

// 4. Dense-chain envelope eps* <= (2d/gamma)*delta for all delta <= 1e-3 on
// the matrix. The exact finite chain violates the asymptotic envelope at the
// large-delta / small-gamma corner (eps*/delta -> d/gamma only as delta -> 0,
// from above); the criterion is evaluated as stated and failures are
// reported honestly.
Verdict criterion4() {
    Verdict v;
    int points = 0, holds = 0;
    for (std::uint32_t d : {3u, 4u, 6u})
        for (double gamma : {0.1, 0.5, 1.0})
            for (double delta : {1e-3, 1e-4, 1e-5, 1e-6}) {
                const double eps_star = dense_max_closed_density(delta, gamma, d, 1e-12).value;
                const double envelope = 2.0 * d / gamma * delta;
                ++points;
                if (eps_star <= envelope) {
                    ++holds;
                } else {
                    v.fail(fmt("eps*=%.3g > (2d/gamma)delta=%.3g at d=%u gamma=%.2f delta=%g",
                               eps_star, envelope, d, gamma, delta));
                }
            }
    v.note(fmt("envelope holds at %d/%d matrix points", holds, points));
    return v;
}

// 5. No factor run violates the sparse-chain frontier (>= 200 runs).
Verdict criterion5() {
    Verdict v;
    ExperimentSpec spec;
    spec.name = "exp-sit-frontier";
    spec.n = 100000;
    spec.d = 4;
    spec.seeds = {1, 2, 3, 4, 5, 6, 7, 8};
    const auto records = run_experiment(spec);
    int violations = 0;
    for (const auto& r : records)
        if (r.estimates.at("violates_frontier") > 0.5) ++violations;
    if (records.size() < 200) v.fail(fmt("only %zu runs", records.size()));
    if (violations > 0) v.fail(fmt("%d frontier violations", violations));
    v.note(fmt("%zu runs, %d violations", records.size(), violations));
    return v;
}

// 6. Adversarial search: guarantee check on G(2000,4) over 50 seeds, and
// >= 95%-optimal on exhaustive instances in >= 90% of cases.
Verdict criterion6() {
    Verdict v;
    const BoundPoint guard = sparse_min_density(4, 0.2, 1e-9);
    AnnealSchedule schedule;
    schedule.iterations = 20000;
    schedule.restarts = 3;
    int bad = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const Graph g = generate_configuration_model(2000, 4, seed);
        for (double eps : {0.005, 0.01, 0.02, 0.05}) {
            const auto res = adversarial_subgraph_search(g, eps, schedule, seed);
            if (res.avg_degree >= 2.2 && res.density < guard.value - 1e-9) ++bad;
        }
    }
    if (bad > 0) v.fail(fmt("%d runs beat the density guarantee", bad));

    int good = 0, total = 0;
    AnnealSchedule small = schedule;
    small.restarts = 4;
    for (int inst = 0; inst < 12; ++inst) {
        const Graph g = generate_configuration_model(18, inst % 2 ? 3 : 4, 4000 + inst);
        for (std::uint32_t size : {6u, 9u, 12u}) {
            const auto mine =
                adversarial_subgraph_search(g, double(size) / 18 + 1e-9, small, 99 + inst);
            const double best = oracle::densest_subset_bruteforce(g, size);
            ++total;
            if (mine.avg_degree >= 0.95 * best - 1e-12) ++good;
        }
    }
    if (good < int(std::ceil(0.9 * total)))
        v.fail(fmt("only %d/%d exhaustive instances within 5%%", good, total));
    v.note(fmt("guarantee violations 0/200, exhaustive matches %d/%d", good, total));
    return v;
}

// 7. Empirical star inequality for every builtin factor; IID control hits
// 5 h(p).
Verdict criterion7() {
    Verdict v;
    const Graph g = generate_configuration_model(100000, 4, 3);
    const LabelField field = sample_labels(g, 3);
    const std::vector<std::string> factors{
        "bernoulli_threshold:p=0.3", "bernoulli_threshold:p=0.5", "red_blue",
        "ball_union:r=1,p_seed=0.1", "ball_union:r=2,p_seed=0.02",
        "local_min_forest:r=1", "two_colour_threshold:t=0.5"};
    for (const auto& spec : factors) {
        const auto factor = make_factor(spec);
        const Configuration c = apply_factor(g, field, *factor);
        const VertexSet region = tree_like_vertices(g, factor->radius() + 1);
        const StarSample stars = collect_stars(g, c, region);
        const auto rep = star_entropy_check(stars, 3.0, 200, 5);
        if (rep.margin < -3.0 * rep.se_margin)
            v.fail(fmt("star inequality violated for %s (margin %.4f, se %.4f)",
                       spec.c_str(), rep.margin, rep.se_margin));
    }
    {
        const auto factor = make_factor("bernoulli_threshold:p=0.3");
        const Configuration c = apply_factor(g, field, *factor);
        const VertexSet region = tree_like_vertices(g, 1);
        const auto rep = star_entropy_check(collect_stars(g, c, region), 3.0, 200, 5);
        const double want = 5.0 * binary_entropy(0.3);
        // plug-in bias is O(support/total) ~ 2e-4 bits; covered by the CI slack
        if (std::fabs(rep.star_entropy - want) > 3.0 * rep.se_star + 1e-3)
            v.fail(fmt("IID control H(X_S)=%.4f vs 5h(p)=%.4f (se %.4f)",
                       rep.star_entropy, want, rep.se_star));
        v.note(fmt("IID control star entropy %.4f vs %.4f", rep.star_entropy, want));
    }
    return v;
}

// 8. Expander density bound by exhaustive enumeration; K_4 spectral Cheeger
// bound exactly 2.
Verdict criterion8() {
    Verdict v;
    struct Bed {
        const char* name;
        Graph g;
    };
    const std::vector<Bed> beds{{"K4", make_complete(4)},
                                {"K5", make_complete(5)},
                                {"Q3", make_hypercube(3)},
                                {"Q4", make_hypercube(4)},
                                {"petersen", make_petersen()}};
    for (const auto& bed : beds) {
        const double h = edge_cheeger_exhaustive(bed.g);
        const std::uint32_t n = bed.g.num_vertices(), d = bed.g.degree();
        for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
            std::uint32_t size = 0;
            std::uint64_t internal2 = 0;
            for (std::uint32_t m = mask; m; m &= m - 1) {
                const Vertex u = std::countr_zero(m);
                ++size;
                for (std::uint32_t s = 0; s < d; ++s)
                    if ((mask >> bed.g.neighbour(u, s)) & 1) ++internal2;
            }
            const double delta = 1.0 - double(internal2) / size / d;
            if (double(size) / n < expander_density_bound(delta, d, h) - 1e-12) {
                v.fail(fmt("%s: subset of size %u violates the bound", bed.name, size));
                break;
            }
        }
    }
    const auto k4 = spectral_gap(make_complete(4), 1e-10, 10000);
    if (std::fabs(k4.cheeger_lower_bound - 2.0) > 1e-9)
        v.fail(fmt("K4 Cheeger bound %.12f != 2", k4.cheeger_lower_bound));
    v.note(fmt("all subsets of 5 test beds respect the bound; K4 bound %.10f",
               k4.cheeger_lower_bound));
    return v;
}

// 9. Delayed-walk stationarity (chi^2 at 1% passes in >= 95/100 seeds) and
// Birkhoff convergence of a two-colouring.
Verdict criterion9() {
    Verdict v;
    ExperimentSpec spec;
    spec.name = "exp-birkhoff";
    spec.n = 2000;
    spec.d = 4;
    spec.seeds.clear();
    for (std::uint64_t s = 1; s <= 100; ++s) spec.seeds.push_back(s);
    spec.extra["steps"] = 100000;
    const auto records = run_experiment(spec);
    int chi_pass = 0, birkhoff_pass = 0;
    for (const auto& r : records) {
        chi_pass += r.estimates.at("chi2_pass") > 0.5;
        birkhoff_pass += r.estimates.at("birkhoff_pass") > 0.5;
    }
    if (chi_pass < 95) v.fail(fmt("chi^2 uniformity passed only %d/100", chi_pass));
    if (birkhoff_pass < 95) v.fail(fmt("Birkhoff convergence passed only %d/100", birkhoff_pass));
    v.note(fmt("chi^2 pass %d/100, Birkhoff pass %d/100", chi_pass, birkhoff_pass));
    return v;
}

// 10. Structural oracles: union-find vs BFS, degree regularity, Wilson
// spanning/acyclic, C_4 UST frequencies.
Verdict criterion10() {
    Verdict v;
    rng::Stream64 pick(31, 2);
    for (int trial = 0; trial < 30; ++trial) {
        const std::uint32_t n = 20 + 2 * pick.next_below(90);
        const std::uint32_t d = 2 + pick.next_below(3);
        const Graph g = generate_configuration_model(n, d, 6000 + trial);
        for (Vertex u = 0; u < n; ++u)
            if (g.degree(u) != d) v.fail("degree regularity violated");
        std::vector<bool> open(n);
        VertexSet s(n);
        for (Vertex u = 0; u < n; ++u)
            if ((open[u] = pick.next_unit() < 0.55)) s.insert(u);
        auto mine = connected_components(g, s).members;
        for (auto& m : mine) std::sort(m.begin(), m.end());
        std::sort(mine.begin(), mine.end());
        if (mine != oracle::bfs_components(g, open)) v.fail("union-find != BFS oracle");
    }

    int wilson_checked = 0;
    for (int t = 0; t < 20; ++t) {
        const Graph g = generate_configuration_model(300, 3, 7000 + t);
        if (!is_connected(g)) continue;
        const SpanningTree tree = wilson_ust(g, 0, t);
        std::vector<Vertex> parent(g.num_vertices());
        for (Vertex u = 0; u < g.num_vertices(); ++u) parent[u] = u;
        std::function<Vertex(Vertex)> find = [&](Vertex x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::uint32_t merges = 0;
        bool acyclic = true;
        for (auto [a, b] : tree.edge_list()) {
            const Vertex ra = find(a), rb = find(b);
            if (ra == rb) acyclic = false;
            parent[ra] = rb;
            ++merges;
        }
        if (!acyclic) v.fail("Wilson tree has a cycle");
        if (merges != g.num_vertices() - 1) v.fail("Wilson tree is not spanning");
        ++wilson_checked;
    }
    if (wilson_checked < 10) v.fail("too few connected Wilson samples");

    const Graph c4 = make_cycle(4);
    std::map<std::pair<Vertex, Vertex>, int> missing;
    const int runs = 10000;
    for (int r = 0; r < runs; ++r) {
        const SpanningTree t = wilson_ust(c4, 0, 50000 + r);
        std::set<std::pair<Vertex, Vertex>> used;
        for (auto [a, b] : t.edge_list()) used.insert({std::min(a, b), std::max(a, b)});
        for (Vertex u = 0; u < 4; ++u) {
            const std::pair<Vertex, Vertex> e{std::min(u, (u + 1) % 4), std::max(u, (u + 1) % 4)};
            if (!used.count(e)) ++missing[e];
        }
    }
    for (const auto& [e, cnt] : missing)
        if (std::fabs(double(cnt) / runs - 0.25) > 0.02)
            v.fail(fmt("C4 tree frequency %.3f outside 1/4 +- 0.02", double(cnt) / runs));
    v.note(fmt("30 oracle partitions, %d Wilson certificates, C4 frequencies within 0.02",
               wilson_checked));
    return v;
}

} // namespace

int main(int argc, char** argv) {
    using CriterionFn = Verdict (*)();
    const std::vector<std::pair<const char*, CriterionFn>> criteria{
        {"red/blue p_c reproduction", criterion1},
        {"exact identity suites", criterion2},
        {"solver vs grid-scan oracle", criterion3},
        {"dense-chain envelope", criterion4},
        {"frontier never violated", criterion5},
        {"adversarial search checks", criterion6},
        {"empirical star inequality", criterion7},
        {"expander density bound", criterion8},
        {"stationarity and Birkhoff", criterion9},
        {"structural oracles", criterion10},
    };
    int which = 0;  // 0 = all
    if (argc > 1 && std::strcmp(argv[1], "all") != 0) which = std::atoi(argv[1]);
    int failures = 0;
    for (int i = 1; i <= int(criteria.size()); ++i) {
        if (which != 0 && which != i) continue;
        Verdict v;
        try {
            v = criteria[i - 1].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %2d [%s]: %s%s%s\n", i, criteria[i - 1].first,
                    v.pass ? "PASS" : "FAIL", v.detail.empty() ? "" : " - ",
                    v.detail.c_str());
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    return failures;
}
