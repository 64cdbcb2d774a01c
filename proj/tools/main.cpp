#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "antikz/cli.hpp"
#include "antikz/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"antikz: noisy-drive quantum annealing sweeps for the transverse-field "
                 "Ising chain"};

    std::string command;
    std::string config_path;
    std::string output_path;
    std::string format;
    int threads = -1;
    std::uint64_t seed = 0;
    bool seed_given = false;

    app.add_option("command", command,
                   "Overrides the 'command' key of the config file");
    app.add_option("--config", config_path, "Run configuration file")->required();
    app.add_option("--output", output_path, "Overrides the output path");
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");
    app.add_option("--format", format, "Output format: csv | json");
    auto* seed_opt = app.add_option("--seed", seed, "Seed for trajectory sampling");

    CLI11_PARSE(app, argc, argv);
    seed_given = seed_opt->count() > 0;

    try {
        antikz::RunConfig cfg = antikz::parse_config_file(config_path);
        if (!command.empty()) cfg.command = command;
        if (!output_path.empty()) cfg.output_path = output_path;
        if (threads >= 0) cfg.threads = threads;
        if (seed_given) {
            cfg.seed = seed;
            cfg.trajectories.seed = seed;
        }
        if (!format.empty()) {
            if (format == "csv")
                cfg.format = antikz::OutputFormat::Csv;
            else if (format == "json")
                cfg.format = antikz::OutputFormat::Json;
            else
                throw antikz::ConfigError("--format: expected 'csv' or 'json'");
        }
        return antikz::run(cfg);
    } catch (const antikz::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const antikz::SimulationError& e) {
        std::fprintf(stderr, "simulation error: %s\n", e.what());
        return 2;
    } catch (const antikz::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    }
}
