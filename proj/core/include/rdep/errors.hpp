#pragma once

#include <stdexcept>
#include <string>

namespace rdep {

/// Raised when an iterative solver gives up (iteration cap, numerical
/// breakdown). Distinct from an infeasible problem report.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when model training cannot complete (propagated solver failures,
/// degenerate resamples, non-convergence).
class TrainingError : public std::runtime_error {
public:
    explicit TrainingError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on malformed input files (CSV parse errors, bad model documents).
class LoadError : public std::runtime_error {
public:
    explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rdep
