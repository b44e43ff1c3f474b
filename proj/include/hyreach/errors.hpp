#pragma once

#include <stdexcept>
#include <string>

namespace hyreach {

// Bad user input: config file, route CSV, inconsistent solver setup. CLI exit status 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Synthesis target has positive value (not reachable). CLI exit status 3.
struct UnreachableTargetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The backward walk lost the zero sublevel set to interpolation drift at `stage`.
struct ReconstructionError : std::runtime_error {
    int stage;
    ReconstructionError(int stage_, const std::string& what)
        : std::runtime_error(what), stage(stage_) {}
};

// The enumeration oracle refuses oversized jobs instead of silently truncating.
struct BudgetExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hyreach
