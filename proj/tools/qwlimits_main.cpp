// qwlimits: experiment driver for the 1D coined quantum walk and its
// continuum limits. Talks to the core library through the C API only.
//
// Exit codes: 0 all checks passed, 1 a tolerance check failed, 2 bad
// configuration or environment.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwlimits/capi.h"

namespace {

// Flat key = value lines; '#' comments. Flags win over file entries.
bool load_config_file(const std::string& path, std::map<std::string, std::string>& kv,
                      std::string& error) {
    std::ifstream in(path);
    if (!in) {
        error = "cannot open config file " + path;
        return false;
    }
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            error = "config line " + std::to_string(lineno) + " is not key = value";
            return false;
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            error = "config line " + std::to_string(lineno) + " has an empty key";
            return false;
        }
        kv[key] = trim(line.substr(eq + 1));
    }
    return true;
}

int list_experiments() {
    std::printf("experiments:\n");
    for (int i = 0; i < qw_experiment_count(); ++i)
        std::printf("  %s\n", qw_experiment_name(i));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qwlimits: coined-walk simulation and continuum-limit verification"};
    app.footer("exit codes: 0 pass, 1 tolerance failure, 2 configuration error");

    std::string experiment;
    std::string config_path;
    std::vector<std::string> param_flags;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int jobs = 1;
    bool describe = false;
    bool list = false;

    app.add_option("experiment", experiment, "experiment name (see --list)");
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--param", param_flags, "parameter override key=value (repeatable; wins over --config)");
    app.add_option("--out", out_dir, "output directory (default: current)");
    app.add_option("--seed", seed, "seed for randomized sweeps (default 1)");
    app.add_option("--jobs", jobs, "worker threads for independent probes (default 1)");
    app.add_flag("--describe", describe, "print what the experiment verifies and exit");
    app.add_flag("--list", list, "list experiment names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list) return list_experiments();

    if (experiment.empty()) {
        std::fprintf(stderr, "error: no experiment given (try --list)\n");
        return 2;
    }

    if (describe) {
        const char* text = qw_experiment_describe(experiment.c_str());
        if (!text) {
            std::fprintf(stderr, "error: unknown experiment '%s'\n", experiment.c_str());
            return 2;
        }
        std::printf("%s\n%s\n", experiment.c_str(), text);
        return 0;
    }

    std::map<std::string, std::string> params;
    if (!config_path.empty()) {
        std::string error;
        if (!load_config_file(config_path, params, error)) {
            std::fprintf(stderr, "error: %s\n", error.c_str());
            return 2;
        }
    }
    for (const auto& flag : param_flags) {
        const auto eq = flag.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::fprintf(stderr, "error: --param expects key=value, got '%s'\n", flag.c_str());
            return 2;
        }
        params[flag.substr(0, eq)] = flag.substr(eq + 1);
    }

    std::vector<const char*> keys, values;
    keys.reserve(params.size());
    values.reserve(params.size());
    for (const auto& [k, v] : params) {
        keys.push_back(k.c_str());
        values.push_back(v.c_str());
    }

    int pass = 0;
    char err[512] = {0};
    const qw_status st = qw_experiment_run(experiment.c_str(), keys.data(), values.data(),
                                           static_cast<int>(keys.size()), out_dir.c_str(), seed,
                                           jobs, &pass, err, sizeof(err));
    if (st != QW_OK) {
        std::fprintf(stderr, "error: %s (%s)\n", err[0] ? err : "unspecified",
                     qw_status_message(st));
        return 2;
    }
    std::printf("%s: %s (outputs in %s)\n", experiment.c_str(), pass ? "PASS" : "FAIL",
                out_dir.c_str());
    return pass ? 0 : 1;
}
