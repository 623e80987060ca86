#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "auglab/report.hpp"

namespace auglab::experiments {

struct ParamInfo {
    std::string name;
    std::string description;
    std::string default_value;
};

struct ExperimentInfo {
    std::string name;
    std::string description;
    std::vector<ParamInfo> params;
};

const std::vector<ExperimentInfo>& registry();

/// Parsed run configuration. Parameters are experiment-specific and validated
/// against the registry (unknown keys rejected).
struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir;
    std::string format = "csv";
    std::map<std::string, std::string> params;  // raw JSON text per key

    void validate() const;
};

/// Loads a JSON config file. Recognized top-level keys: experiment, seed,
/// out_dir, format, params. Unknown keys raise std::invalid_argument.
ExperimentConfig load_config_file(const std::string& path);

ExperimentReport run_experiment(const ExperimentConfig& config);

/// Verification suites driving the module invariants on seeded random
/// instances: theorem1, safe-conditions, variance, kovanic, rst, all.
ExperimentReport run_verify(const std::string& suite, std::uint64_t seed);

ExperimentReport verify_theorem1(std::uint64_t seed);
ExperimentReport verify_safe_conditions(std::uint64_t seed);
ExperimentReport verify_variance(std::uint64_t seed);
ExperimentReport verify_kovanic(std::uint64_t seed);
ExperimentReport verify_rst(std::uint64_t seed);
ExperimentReport verify_adversarial(std::uint64_t seed);  // included in suite "all"

}  // namespace auglab::experiments
