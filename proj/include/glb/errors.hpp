#pragma once

#include <stdexcept>
#include <string>

namespace glb {

// Bad inputs and misconfiguration: wrong dimensions, out-of-range
// hyperparameters, unknown config keys.
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// Newton iteration exhausted without reaching the score tolerance.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double residual_norm, int iterations)
        : std::runtime_error(what), residual_norm(residual_norm), iterations(iterations) {}

    double residual_norm;
    int iterations;
};

// File and stream problems; carries the offending line for line-oriented
// formats (replay logs).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what, long line = 0)
        : std::runtime_error(what), line(line) {}

    long line;
};

}  // namespace glb
