#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "antikz/analysis.hpp"
#include "antikz/trajectories.hpp"

namespace antikz {

inline constexpr const char* kVersion = "0.1.0";

enum class OutputFormat { Csv, Json };

// A batch run: one command plus the sections it needs, read from a flat
// key-value config file with dotted section keys (see README for the key
// list). CLI flags override seed/output/format/threads after parsing.
struct RunConfig {
    std::string command; // single | sweep-tau | sweep-w2 | tau-opt |
                         // verify-novikov | verify-oracle | asymptotics
    ModelParams params{4, 1.0, 1.0, 0.0, Protocol::annealing()};
    std::vector<double> sweep_tau;
    std::vector<double> sweep_w2;
    IntegratorConfig integrator;
    TrajectoryConfig trajectories{0, 0.0, 0, TrajectoryScope::PerMode};
    double verify_k = 1.5707963267948966; // pi/2
    std::vector<std::pair<double, double>> oracle_points; // (tau, w2)
    std::uint64_t seed = 0;
    std::string output_path = "out.csv";
    OutputFormat format = OutputFormat::Csv;
    int threads = 0; // 0 = all available cores

    /// Command-specific validation; throws ConfigError naming the field.
    void validate() const;
};

/// Parses a config file; throws ConfigError with line diagnostics.
RunConfig parse_config_file(const std::string& path);

/// Same parser on in-memory text (origin only labels error messages).
RunConfig parse_config_text(const std::string& text, const std::string& origin);

/// Executes the configured command. Writes the results table to
/// cfg.output_path plus a metadata sidecar <output>.meta.json. Returns 0;
/// failures throw ConfigError / SimulationError / IoError, which the CLI
/// maps to exit codes 1 / 2 / 3.
int run(const RunConfig& cfg);

/// Writes plot-ready column files (tau, w2, n_w, q, de, delta n_w), one per
/// W^2 value in `records`, under `prefix`. delta n_w is taken against the
/// W^2 = 0 rows when present. Throws on empty input.
void emit_plot_data(std::span<const ObservableRecord> records, const std::string& prefix);

} // namespace antikz
