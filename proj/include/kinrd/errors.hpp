#pragma once

#include <stdexcept>
#include <string>

namespace kinrd {

// Bad user input: invalid flags, unsupported degrees, malformed config.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent mesh / data file.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Nonphysical state (rho <= 0, p <= 0, vacuum). Carries the DoF where it
// happened when known, so a failed run can report the location.
struct StateError : std::runtime_error {
    int dof = -1;
    double time = -1.0;
    explicit StateError(const std::string& msg, int dof_ = -1, double time_ = -1.0)
        : std::runtime_error(msg), dof(dof_), time(time_) {}
};

} // namespace kinrd
