#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// Bad input: violated preconditions, malformed parameters, non-states.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: lost positivity, non-convergence, inconsistent spectra.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// File system / stream failure.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qcorr
