// End-to-end checks of the command line binary: formats, exit codes,
// determinism across runs and thread counts. argv[1] is the binary path.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string g_binary;
int g_counter = 0;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path =
        "/tmp/fiidlab_cli_" + std::to_string(++g_counter) + ".out";
    const std::string cmd = g_binary + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::remove(out_path.c_str());
    return {WEXITSTATUS(status), buffer.str()};
}

} // namespace

TEST_CASE("gen-graph: determinism and round trip through files") {
    const auto a = run_cli("--seed 9 gen-graph --n 100 --d 4");
    const auto b = run_cli("--seed 9 gen-graph --n 100 --d 4");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const auto c = run_cli("--seed 10 gen-graph --n 100 --d 4");
    CHECK(a.out != c.out);

    // write to a file, re-read through --graph-file, re-emit: byte idempotent
    const auto w = run_cli("--seed 9 gen-graph --n 100 --d 4 --out /tmp/fiidlab_g1.txt");
    CHECK(w.exit_code == 0);
    const auto reread = run_cli("gen-graph --graph-file /tmp/fiidlab_g1.txt");
    CHECK(reread.exit_code == 0);
    CHECK(reread.out == a.out);
    std::remove("/tmp/fiidlab_g1.txt");
}

TEST_CASE("exit codes: invalid parameters and io errors") {
    CHECK(run_cli("gen-graph --n 3 --d 3").exit_code == 2);        // odd half-edges
    CHECK(run_cli("run-factor --n 50 --d 4 --factor bogus").exit_code == 2);
    CHECK(run_cli("run-factor --n 50 --d 4 --factor bernoulli_threshold:p=2").exit_code == 2);
    CHECK(run_cli("gen-graph --graph-file /does/not/exist").exit_code == 4);
    CHECK(run_cli("experiment no-such-experiment --n 100").exit_code == 2);
    CHECK(run_cli("pc-sweep --n 500 --d 4 --min-cluster 100000").exit_code == 2);
    // exit code 3: impossible simple pairing exhausts rejection sampling
    CHECK(run_cli("gen-graph --n 2 --d 8 --simple").exit_code == 3);
}

TEST_CASE("stats output is valid json with expected fields") {
    const auto r = run_cli("--seed 3 stats --n 2000 --d 4 --factor red_blue --symbol red");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("symbol") == "red");
    const double density = j.at("density").get<double>();
    CHECK(density > 0.4);
    CHECK(density < 0.6);
    CHECK(j.at("conditional_avg_degree").get<double>() > 1.5);
}

TEST_CASE("pc-sweep emits a csv curve with the estimate footer") {
    const auto r = run_cli("--seed 5 --replicas 2 pc-sweep --n 20000 --d 4 "
                           "--factor bernoulli_threshold:p=1 --symbol open "
                           "--p-grid 0.1:1.0:0.1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("p,mean_giant_fraction,stderr") == 0);
    CHECK(r.out.find("# p_c_estimate=") != std::string::npos);
}

TEST_CASE("bound-curve: determinism and golden file") {
    const std::string args =
        "bound-curve --chain sparse --d 4 --delta-grid 0.2,0.5,1.0,1.5 --tol 1e-8";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    // golden file (regeneration command documented next to it)
    std::ifstream golden(std::string(TEST_SOURCE_DIR) + "/golden/sparse_curve_d4.csv");
    REQUIRE(golden);
    std::stringstream want;
    want << golden.rdbuf();
    CHECK(a.out == want.str());
}

TEST_CASE("feasible subcommand emits a json verdict") {
    const auto r = run_cli("feasible --chain sparse --eps 0.5 --delta 0.1 --d 4");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("feasible") == true);
    CHECK(j.at("lhs_bits").get<double>() == doctest::Approx(2.0));
    const auto bad = run_cli("feasible --chain dense --eps 0.5 --delta 0.1 --gamma 0 --d 4");
    CHECK(bad.exit_code == 2);
    const auto dom = run_cli("feasible --chain dense --eps 0.05 --delta 0.1 --gamma 0.5 --d 4");
    REQUIRE(dom.exit_code == 0);
    CHECK(nlohmann::json::parse(dom.out).at("domain_ok") == false);
}

TEST_CASE("config file: key = value grammar drives the global options") {
    {
        std::ofstream cfg("/tmp/fiidlab_test.cfg");
        cfg << "seed = 9\n";
    }
    const auto via_cfg = run_cli("--config /tmp/fiidlab_test.cfg gen-graph --n 60 --d 4");
    const auto via_flag = run_cli("--seed 9 gen-graph --n 60 --d 4");
    CHECK(via_cfg.exit_code == 0);
    CHECK(via_cfg.out == via_flag.out);
    std::remove("/tmp/fiidlab_test.cfg");
}

TEST_CASE("experiments: listing, records, thread-count independence") {
    const auto names = run_cli("experiment exp-expander-bound --list");
    CHECK(names.exit_code == 0);
    for (const char* want :
         {"exp-redblue-pc", "exp-sit-frontier", "exp-adversarial", "exp-entropy-star",
          "exp-dense-threshold", "exp-expander-bound", "exp-wusf-majority", "exp-birkhoff"})
        CHECK(names.out.find(want) != std::string::npos);

    const std::string args =
        "experiment exp-adversarial --n 300 --seeds 4,5 --replicas 1";
    const auto t1 = run_cli(args + " --threads 1");
    const auto t2 = run_cli(args + " --threads 2");
    REQUIRE(t1.exit_code == 0);
    REQUIRE(t2.exit_code == 0);
    // line-by-line record identity, ignoring wall-clock
    std::istringstream s1(t1.out), s2(t2.out);
    std::string l1, l2;
    int lines = 0;
    while (std::getline(s1, l1) && std::getline(s2, l2)) {
        auto j1 = nlohmann::json::parse(l1);
        auto j2 = nlohmann::json::parse(l2);
        j1.erase("wall_ms");
        j2.erase("wall_ms");
        CHECK(j1 == j2);
        ++lines;
    }
    CHECK(lines == 8);  // 2 seeds x 4 budgets

    // spec-hash integrity: any parameter change changes the hash
    const auto other = run_cli("experiment exp-adversarial --n 302 --seeds 4,5 --replicas 1");
    const auto h1 = nlohmann::json::parse(t1.out.substr(0, t1.out.find('\n')))
                        .at("spec_hash").get<std::uint64_t>();
    const auto h2 = nlohmann::json::parse(other.out.substr(0, other.out.find('\n')))
                        .at("spec_hash").get<std::uint64_t>();
    CHECK(h1 != h2);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-fiidlab-binary>\n");
        return 1;
    }
    g_binary = argv[1];
    doctest::Context context;
    context.applyCommandLine(argc - 1, argv + 1);
    return context.run();
}
