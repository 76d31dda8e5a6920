// Batch front-end: one scenario per invocation, configuration from a
// key=value document, deterministic CSV and report output.
//
//   cavitychain <scenario> --config <path> [--out <dir>] [--threads N]
//                [--seed N] [--plot]
//   cavitychain validate --config <path>
//
// Exit codes: 0 success, 2 validation failure, 3 numeric failure.

#include <cstdio>
#include <cstring>
#include <iostream>
#include <string>

#include "cavitychain/config.hpp"
#include "cavitychain/errors.hpp"
#include "cavitychain/scenarios.hpp"
#include "cavitychain/version.hpp"

namespace {

void usage() {
    std::cout
        << "usage: cavitychain <scenario> --config <path> [--out <dir>] [--threads N]\n"
           "                   [--seed N] [--plot]\n"
           "       cavitychain validate --config <path>\n"
           "\n"
           "scenarios: spectrum eigen extract-gamma fit-alpha fit-g bbq j12-model\n"
           "           j12-oracle compare photon-field\n"
           "exit codes: 0 success, 2 validation failure, 3 numeric failure\n";
}

}  // namespace

int main(int argc, char** argv) {
    using namespace cavitychain;
    if (argc < 2) {
        usage();
        return 2;
    }
    const std::string command = argv[1];
    if (command == "--help" || command == "-h" || command == "help") {
        usage();
        return 0;
    }
    if (command == "--version") {
        std::cout << "cavitychain " << k_version << '\n';
        return 0;
    }

    std::string config_path, out_dir;
    int threads = 1;
    unsigned seed = 12345;
    bool seed_given = false, plot = false;
    for (int i = 2; i < argc; ++i) {
        const std::string arg = argv[i];
        auto next = [&](const char* flag) -> std::string {
            if (i + 1 >= argc) {
                std::cerr << "error: " << flag << " needs a value\n";
                std::exit(2);
            }
            return argv[++i];
        };
        if (arg == "--config") {
            config_path = next("--config");
        } else if (arg == "--out") {
            out_dir = next("--out");
        } else if (arg == "--threads") {
            threads = std::stoi(next("--threads"));
        } else if (arg == "--seed") {
            seed = static_cast<unsigned>(std::stoul(next("--seed")));
            seed_given = true;
        } else if (arg == "--plot") {
            plot = true;
        } else {
            std::cerr << "error: unknown flag '" << arg << "'\n";
            usage();
            return 2;
        }
    }
    if (config_path.empty()) {
        std::cerr << "error: --config is required\n";
        return 2;
    }

    ExperimentConfig cfg;
    try {
        cfg = parse_config(config_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    const auto diagnostics = validate_config(cfg);
    if (command == "validate") {
        for (const auto& d : diagnostics) std::cout << d << '\n';
        return diagnostics.empty() ? 0 : 2;
    }

    if (cfg.scenario != command) {
        std::cerr << "error: scenario: config declares '" << cfg.scenario
                  << "' but the command line asked for '" << command << "'\n";
        return 2;
    }
    if (!diagnostics.empty()) {
        for (const auto& d : diagnostics) std::cerr << "error: " << d << '\n';
        return 2;
    }

    if (out_dir.empty()) out_dir = cfg.get_str("out", "out-" + cfg.scenario);
    if (cfg.kv.count("threads") && threads == 1) threads = cfg.get_int("threads", 1);
    if (!seed_given && cfg.kv.count("seed")) seed = static_cast<unsigned>(cfg.get_int("seed", 12345));

    try {
        const RunReport report = run_scenario(cfg, out_dir, threads, seed, plot);
        std::cout << "scenario " << report.scenario << " done in "
                  << static_cast<long>(report.wall_ms) << " ms; outputs in " << out_dir
                  << '\n';
        for (const auto& [k, v] : report.outputs) std::cout << "  " << k << " = " << v << '\n';
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
