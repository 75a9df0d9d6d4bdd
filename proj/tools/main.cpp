// fiidlab command line: graph generation, factor runs, cluster statistics,
// retention sweeps, entropy checks, bound curves and named experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fiidlab/bounds.hpp"
#include "fiidlab/errors.hpp"
#include "fiidlab/experiments.hpp"
#include "fiidlab/factors.hpp"
#include "fiidlab/graph.hpp"
#include "fiidlab/labels.hpp"
#include "fiidlab/percolation.hpp"
#include "fiidlab/simd/kernels.hpp"
#include "fiidlab/stars.hpp"

namespace {

using namespace fiidlab;

struct GraphArgs {
    std::string model = "configuration";
    std::uint32_t n = 1000;
    std::uint32_t d = 4;
    std::uint32_t k = 2;
    bool simple = false;
    std::string input_file;  // load instead of generating
};

void add_graph_options(CLI::App* cmd, GraphArgs& args) {
    cmd->add_option("--model", args.model, "configuration | permutation")
        ->check(CLI::IsMember({"configuration", "permutation"}));
    cmd->add_option("--n", args.n, "vertex count");
    cmd->add_option("--d", args.d, "degree (configuration model)");
    cmd->add_option("--k", args.k, "permutation count (permutation model)");
    cmd->add_flag("--simple", args.simple, "reject pairings with loops or parallel edges");
    cmd->add_option("--graph-file", args.input_file, "read an edge-list file instead");
}

Graph realize_graph(const GraphArgs& args, std::uint64_t seed) {
    if (!args.input_file.empty()) return read_edge_list_file(args.input_file);
    if (args.model == "permutation") return generate_permutation_model(args.n, args.k, seed);
    ConfigurationModelOptions opts;
    opts.reject_non_simple = args.simple;
    return generate_configuration_model(args.n, args.d, seed, opts);
}

std::vector<double> parse_grid(const std::string& text) {
    // "a:b:step" or comma list
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double a = 0, b = 0, step = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || step <= 0)
            throw invalid_parameter("bad grid '" + text + "' (want a:b:step)");
        for (double p = a; p <= b + 1e-12; p += step) grid.push_back(std::min(p, b));
    } else {
        std::istringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
    }
    if (grid.empty()) throw invalid_parameter("empty grid '" + text + "'");
    return grid;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw io_error("cannot open for writing: " + path);
    return file;
}

int run(int argc, char** argv) {
    simd::init_from_env();
    CLI::App app{"factor-of-IID percolation laboratory"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value configuration file (sections in brackets)");

    std::uint64_t seed = 1;
    std::uint32_t replicas = 3;
    std::uint32_t threads = 1;
    app.add_option("--seed", seed, "base RNG seed")->capture_default_str();
    app.add_option("--replicas", replicas, "replicas per seed")->capture_default_str();
    app.add_option("--threads", threads, "worker threads")->capture_default_str();

    // gen-graph
    auto* gen = app.add_subcommand("gen-graph", "generate a graph and write an edge list");
    GraphArgs gen_args;
    add_graph_options(gen, gen_args);
    std::string gen_out = "-";
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // run-factor
    auto* runf = app.add_subcommand("run-factor", "evaluate a block factor over IID labels");
    GraphArgs runf_args;
    add_graph_options(runf, runf_args);
    std::string runf_factor = "bernoulli_threshold:p=0.5";
    std::string runf_out = "-";
    runf->add_option("--factor", runf_factor, "rule_id:key=val,key=val");
    runf->add_option("--out", runf_out, "output path for the RLE configuration");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "density and cluster statistics for a symbol");
    GraphArgs stats_args;
    add_graph_options(stats_cmd, stats_args);
    std::string stats_factor = "bernoulli_threshold:p=0.5";
    std::string stats_symbol = "open";
    std::string stats_out = "-";
    stats_cmd->add_option("--factor", stats_factor, "rule spec");
    stats_cmd->add_option("--symbol", stats_symbol, "symbol name");
    stats_cmd->add_option("--out", stats_out, "output path (JSON)");

    // pc-sweep
    auto* sweep_cmd = app.add_subcommand("pc-sweep", "retention sweep and p_c estimate");
    GraphArgs sweep_args;
    add_graph_options(sweep_cmd, sweep_args);
    std::string sweep_factor = "bernoulli_threshold:p=1";
    std::string sweep_symbol = "open";
    std::string sweep_grid = "0.02:1.0:0.02";
    double sweep_tau = 0.05;
    std::uint32_t sweep_min_cluster = 1000;
    std::string sweep_out = "-";
    sweep_cmd->add_option("--factor", sweep_factor, "rule spec");
    sweep_cmd->add_option("--symbol", sweep_symbol, "symbol name");
    sweep_cmd->add_option("--p-grid", sweep_grid, "a:b:step or comma list");
    sweep_cmd->add_option("--tau", sweep_tau, "giant-fraction threshold")->capture_default_str();
    sweep_cmd->add_option("--min-cluster", sweep_min_cluster, "required largest cluster")
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "output path (CSV rows per grid point)");

    // entropy-check
    auto* star_cmd = app.add_subcommand("entropy-check", "empirical star entropy report");
    GraphArgs star_args;
    add_graph_options(star_cmd, star_args);
    std::string star_factor = "red_blue";
    double star_threshold = 0.0;  // 0 -> use d-1
    std::uint32_t star_bootstrap = 200;
    std::string star_out = "-";
    star_cmd->add_option("--factor", star_factor, "rule spec");
    star_cmd->add_option("--threshold-factor", star_threshold,
                         "star/root entropy factor (default d-1)");
    star_cmd->add_option("--bootstrap", star_bootstrap, "bootstrap rounds")->capture_default_str();
    star_cmd->add_option("--out", star_out, "output path (JSON)");

    // bound-curve
    auto* curve_cmd = app.add_subcommand("bound-curve", "solved bound curve as CSV");
    std::string curve_chain = "sparse";
    std::uint32_t curve_d = 4;
    double curve_gamma = 1.0;
    std::string curve_grid = "0.05:1.95:0.05";
    double curve_tol = 1e-6;
    std::string curve_out = "-";
    curve_cmd->add_option("--chain", curve_chain, "sparse | dense")
        ->check(CLI::IsMember({"sparse", "dense"}));
    curve_cmd->add_option("--d", curve_d, "degree")->capture_default_str();
    curve_cmd->add_option("--gamma", curve_gamma, "Cheeger constant (dense chain)")
        ->capture_default_str();
    curve_cmd->add_option("--delta-grid", curve_grid, "a:b:step or comma list")
        ->capture_default_str();
    curve_cmd->add_option("--tol", curve_tol, "bisection tolerance")->capture_default_str();
    curve_cmd->add_option("--out", curve_out, "output path (CSV)");

    // feasible
    auto* feas_cmd = app.add_subcommand("feasible", "entropy-chain feasibility check as JSON");
    std::string feas_chain = "sparse";
    double feas_eps = 0.1, feas_delta = 0.1, feas_gamma = 1.0;
    std::uint32_t feas_d = 4;
    feas_cmd->add_option("--chain", feas_chain, "sparse | dense")
        ->check(CLI::IsMember({"sparse", "dense"}));
    feas_cmd->add_option("--eps", feas_eps, "density (sparse) or closed density (dense)")
        ->capture_default_str();
    feas_cmd->add_option("--delta", feas_delta, "degree excess/deficit")->capture_default_str();
    feas_cmd->add_option("--gamma", feas_gamma, "Cheeger constant (dense)")->capture_default_str();
    feas_cmd->add_option("--d", feas_d, "degree")->capture_default_str();
    std::string feas_out = "-";
    feas_cmd->add_option("--out", feas_out, "output path (JSON)");

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "run a named experiment");
    std::string exp_name;
    GraphArgs exp_args;
    exp_args.n = 0;  // 0 -> per-experiment default
    std::string exp_seeds;
    std::string exp_out;
    exp_cmd->add_option("name", exp_name, "experiment name (see --list)");
    add_graph_options(exp_cmd, exp_args);
    exp_cmd->add_option("--seeds", exp_seeds, "comma list (default seed..seed+7)");
    exp_cmd->add_option("--out", exp_out, "output prefix; writes <prefix>.jsonl");
    bool exp_list = false;
    exp_cmd->add_flag("--list", exp_list, "list registered experiments");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        const Graph g = realize_graph(gen_args, seed);
        std::ofstream file;
        write_edge_list(g, open_out(file, gen_out));
        return 0;
    }

    if (runf->parsed()) {
        const Graph g = realize_graph(runf_args, seed);
        const LabelField field = sample_labels(g, seed);
        const auto factor = make_factor(runf_factor);
        const Configuration c = apply_factor(g, field, *factor);
        std::ofstream file;
        write_configuration(c, open_out(file, runf_out));
        return 0;
    }

    if (stats_cmd->parsed()) {
        const Graph g = realize_graph(stats_args, seed);
        const LabelField field = sample_labels(g, seed);
        const auto factor = make_factor(stats_factor);
        const Configuration c = apply_factor(g, field, *factor);
        const Symbol sym = factor->symbol_index(stats_symbol);
        const DensityReport dr = density_report(g, c, sym);
        const ClusterSummary cs = cluster_stats(g, c, sym);
        const DegreeBookkeeping bk = degree_bookkeeping(g, c, sym);
        nlohmann::json j{{"op", "stats"},
                         {"seed", seed},
                         {"symbol", stats_symbol},
                         {"density", dr.density},
                         {"conditional_avg_degree", dr.conditional_avg_degree},
                         {"avg_degree_defined", dr.avg_degree_defined},
                         {"open_count", dr.open_count},
                         {"open_open_edges", dr.open_open_edges},
                         {"clusters", cs.clusters.size()},
                         {"largest_cluster", cs.largest_size},
                         {"kappa_hat", bk.kappa_hat}};
        std::ofstream file;
        open_out(file, stats_out) << j.dump() << '\n';
        return 0;
    }

    if (sweep_cmd->parsed()) {
        const Graph g = realize_graph(sweep_args, seed);
        const LabelField field = sample_labels(g, seed);
        const auto factor = make_factor(sweep_factor);
        const Configuration c = apply_factor(g, field, *factor);
        const Symbol sym = factor->symbol_index(sweep_symbol);
        PcSweepOptions opts{sweep_tau, sweep_min_cluster};
        const auto res =
            pc_sweep(g, c, sym, parse_grid(sweep_grid), replicas, seed, opts);
        std::ofstream file;
        auto& os = open_out(file, sweep_out);
        os << "p,mean_giant_fraction,stderr\n";
        char buf[128];
        for (std::size_t i = 0; i < res.p_grid.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", res.p_grid[i],
                          res.mean_giant_fraction[i], res.stderr_giant_fraction[i]);
            os << buf;
        }
        std::snprintf(buf, sizeof buf, "# p_c_estimate=%.17g stderr=%.17g crossed=%d\n",
                      res.p_c_estimate, res.p_c_stderr, int(res.crossed));
        os << buf;
        return 0;
    }

    if (star_cmd->parsed()) {
        const Graph g = realize_graph(star_args, seed);
        const LabelField field = sample_labels(g, seed);
        const auto factor = make_factor(star_factor);
        const Configuration c = apply_factor(g, field, *factor);
        const VertexSet region = tree_like_vertices(g, factor->radius() + 1);
        const StarSample stars = collect_stars(g, c, region);
        const double threshold =
            star_threshold > 0 ? star_threshold : double(g.degree()) - 1.0;
        const auto report = star_entropy_check(stars, threshold, star_bootstrap, seed);
        nlohmann::json j{{"op", "entropy-check"},
                         {"seed", seed},
                         {"factor", star_factor},
                         {"total", report.total},
                         {"star_entropy", report.star_entropy},
                         {"root_entropy", report.root_entropy},
                         {"rest_given_root", report.rest_given_root},
                         {"unordered_star_entropy", report.unordered_star_entropy},
                         {"threshold_factor", report.threshold_factor},
                         {"margin", report.margin},
                         {"se_star", report.se_star},
                         {"se_root", report.se_root},
                         {"se_margin", report.se_margin}};
        if (report.binary) {
            j["rest_given_closed_root"] = report.rest_given_closed_root;
            j["kappa_hat"] = report.kappa_hat;
        }
        std::ofstream file;
        open_out(file, star_out) << j.dump() << '\n';
        return 0;
    }

    if (feas_cmd->parsed()) {
        const FeasibilityCheck c = feas_chain == "sparse"
                                       ? sparse_feasible(feas_eps, feas_delta, feas_d)
                                       : dense_feasible(feas_eps, feas_delta, feas_gamma, feas_d);
        nlohmann::json j{{"chain", feas_chain}, {"eps", c.eps},       {"delta", c.delta},
                         {"d", c.d},           {"lhs_bits", c.lhs_bits}, {"rhs_bits", c.rhs_bits},
                         {"feasible", c.feasible}, {"domain_ok", c.domain_ok}, {"margin", c.margin}};
        if (feas_chain == "dense") j["gamma"] = c.gamma;
        std::ofstream file;
        open_out(file, feas_out) << j.dump() << '\n';
        return 0;
    }

    if (curve_cmd->parsed()) {
        const auto grid = parse_grid(curve_grid);
        const BoundCurve curve =
            curve_chain == "sparse"
                ? sparse_bound_curve(curve_d, grid, curve_tol)
                : dense_bound_curve(curve_d, curve_gamma, grid, curve_tol);
        std::ofstream file;
        curve.write_csv(open_out(file, curve_out));
        return 0;
    }

    if (exp_cmd->parsed()) {
        if (exp_list) {
            for (const auto& name : experiment_names()) std::cout << name << '\n';
            return 0;
        }
        ExperimentSpec spec;
        spec.name = exp_name;
        spec.model = exp_args.model;
        spec.d = exp_args.d;
        spec.k = exp_args.k;
        spec.replicas = replicas;
        spec.threads = threads;
        // per-experiment default sizes, overridable with --n
        if (exp_args.n != 0) {
            spec.n = exp_args.n;
        } else if (exp_name == "exp-redblue-pc") {
            spec.n = 1000000;
        } else if (exp_name == "exp-adversarial" || exp_name == "exp-birkhoff") {
            spec.n = 2000;
        } else if (exp_name == "exp-wusf-majority") {
            spec.n = 20000;
        } else {
            spec.n = 100000;
        }
        if (exp_name == "exp-wusf-majority") spec.model = "permutation";
        if (!exp_seeds.empty()) {
            spec.seeds.clear();
            std::istringstream ss(exp_seeds);
            std::string item;
            while (std::getline(ss, item, ',')) spec.seeds.push_back(std::stoull(item));
        } else {
            spec.seeds.clear();
            for (std::uint64_t s = seed; s < seed + 8; ++s) spec.seeds.push_back(s);
        }
        spec.out_prefix = exp_out;
        const auto records = run_experiment(spec);
        if (!exp_out.empty()) {
            std::ofstream file(exp_out + ".jsonl");
            if (!file) throw io_error("cannot open for writing: " + exp_out + ".jsonl");
            write_jsonl(records, file);
            if (exp_name == "exp-sit-frontier") {
                // the guarantee curve the scatter is judged against
                std::vector<double> grid;
                for (double delta = 0.05; delta <= 1.951; delta += 0.05) grid.push_back(delta);
                std::ofstream curve(exp_out + "_bound_curve.csv");
                if (!curve) throw io_error("cannot open for writing: " + exp_out + "_bound_curve.csv");
                sparse_bound_curve(spec.d, grid, 1e-8).write_csv(curve);
            }
        } else {
            write_jsonl(records, std::cout);
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const fiidlab::invalid_parameter& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return 2;
    } catch (const fiidlab::convergence_error& e) {
        std::cerr << "no convergence: " << e.what() << " (best " << e.best_estimate << ")\n";
        return 3;
    } catch (const fiidlab::io_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
