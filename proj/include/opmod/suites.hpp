#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace opmod {

// One JSON document per run.  Grids left empty fall back to per-suite
// defaults; the seed is mandatory (determinism is part of the contract).
struct SuiteConfig {
    std::string suite;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int instances = 100;
    int size_cap = 12;
    int budget = 200;
    std::vector<double> sigma_grid;
    std::vector<double> delta_grid;
    std::vector<double> h_grid;
    std::vector<int> m_grid;
    std::vector<std::string> functions;
    std::string out_dir = ".";

    static SuiteConfig from_json(const nlohmann::json& j);
    static SuiteConfig load(const std::string& path);
};

struct Assertion {
    std::string name;
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string note;
};

struct RunReport {
    static constexpr int schema_version = 1;

    std::string suite;
    std::uint64_t seed = 0;
    std::vector<Assertion> assertions;
    std::map<std::string, double> measured_constants;
    std::map<std::string, double> worst_ratios;
    std::vector<std::string> artifacts; // CSV paths written by the suite
    std::string witness_bundle;         // empty when the suite stores none
    double wall_time_seconds = 0.0;

    bool pass() const;
    nlohmann::json to_json() const;
};

/// Valid suite names, in the order `run --suite all` executes them.
const std::vector<std::string>& suite_names();

/// Execute one suite; writes CSV artifacts, the witness bundle, and
/// report.json under config.out_dir (atomically).
RunReport run_suite(const SuiteConfig& config);

/// Recompute every quantity in a previously written witness bundle and
/// compare against the stored values (tolerance 1e-8).
RunReport replay(const std::string& witness_path);

/// Fixed-format float used in all CSV output: 17 significant digits.
std::string format_g17(double v);

} // namespace opmod
