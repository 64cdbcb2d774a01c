#pragma once

#include <stdexcept>
#include <string>

namespace antikz {

// Raised for malformed run configurations (bad keys, values outside the
// documented preconditions). The CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a simulation kernel fails (step-size condition violated,
// positivity lost, minimum not bracketed, ...). CLI exit code 2.
struct SimulationError : std::runtime_error {
    explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised on unreadable/unwritable paths. CLI exit code 3.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace antikz
