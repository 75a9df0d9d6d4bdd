#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fiidlab {

// Validated, hashable description of a named experiment run. Every output
// record carries the hash, so any parameter change is visible downstream.
struct ExperimentSpec {
    std::string name;
    std::string model = "configuration";  // or "permutation"
    std::uint32_t n = 100000;
    std::uint32_t d = 4;
    std::uint32_t k = 2;  // permutation model only
    std::string factor_spec;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8};
    std::uint32_t replicas = 3;
    std::uint32_t threads = 1;
    std::string out_prefix;
    std::map<std::string, double> extra;

    std::string canonical_string() const;
    std::uint64_t spec_hash() const;  // FNV-1a over the canonical string
    void validate() const;
};

struct ResultRecord {
    std::string experiment;
    std::uint64_t spec_hash = 0;
    std::uint64_t seed = 0;
    std::map<std::string, double> estimates;
    std::map<std::string, double> stderrs;
    std::map<std::string, std::string> meta;
    double wall_ms = 0.0;

    std::string to_json_line() const;
};

const std::vector<std::string>& experiment_names();
bool is_registered_experiment(const std::string& name);

// Runs the named experiment with replica-level parallelism (spec.threads);
// records come back in deterministic (seed-major) order, independent of the
// thread count. wall_ms is informational and excluded from determinism
// claims.
std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec);

void write_jsonl(const std::vector<ResultRecord>& records, std::ostream& os);

} // namespace fiidlab
