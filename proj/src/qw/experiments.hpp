#ifndef QW_EXPERIMENTS_HPP
#define QW_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qw {

struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, std::string> params;
    std::string output_dir = ".";
    std::uint64_t seed = 1;
    int jobs = 1;
};

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct RunSummary {
    std::string experiment;
    std::map<std::string, std::string> params_echo;
    std::map<std::string, double> metrics;
    std::vector<CheckResult> checks;
    std::vector<std::string> outputs;
    bool pass = false;
    double wall_time = 0.0;
};

// Known experiment names, in a fixed order.
const std::vector<std::string>& experiment_names();

// One-paragraph statement of what the experiment verifies; throws
// Error(invalid_config) for unknown names.
std::string describe_experiment(const std::string& name);

// Runs the experiment, writes CSV/plot data plus summary.json under
// config.output_dir, and returns the summary. Deterministic given the seed.
RunSummary run(const ExperimentConfig& config);

}  // namespace qw

#endif
