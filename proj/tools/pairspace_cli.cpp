// Copyright 2026 The pairspace Authors
// SPDX-License-Identifier: Apache-2.0

// pairspace {fermion-exclusion | rotation-closure | equivalence | energy-divergence | all}
//           [--config FILE] [--l-max N] [--seed N] [--output DIR] [--no-renorm]

#include "pairspace/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
    namespace pc = pairspace::cli;

    CLI::App app{"Seam-continuity checks for two identical spin-zero particles"};
    std::string command;
    std::string config_path;
    std::optional<int> l_max;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output;
    bool no_renorm = false;

    app.add_option("command", command, "Demonstration to run")
        ->required()
        ->check(CLI::IsMember(pc::command_names()));
    app.add_option("--config", config_path, "JSON file with RunConfig fields");
    app.add_option("--l-max", l_max, "Maximum angular degree");
    app.add_option("--seed", seed, "Seed for random rotations and expansions");
    app.add_option("--output", output, "Directory for reports");
    app.add_flag("--no-renorm", no_renorm, "Skip the 1/sqrt(2) in the full-space extension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : pc::kExitUsage;
    }

    try {
        pc::RunConfig cfg;
        if (!config_path.empty()) cfg = pc::load_config_file(config_path, cfg);
        if (l_max) cfg.l_max = *l_max;
        if (seed) cfg.seed = *seed;
        if (output) cfg.output_dir = *output;
        if (no_renorm) cfg.renormalize = false;
        return pc::execute(command, cfg, std::cout);
    } catch (const pc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return pc::kExitUsage;
}
