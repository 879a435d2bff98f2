#pragma once

#include <stdexcept>
#include <string>

namespace dta {

/// Malformed or inconsistent input data (files, sequences, matrices).
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration (shapes, hyperparameters, flag combinations).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure (non-finite values, degenerate systems).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dta
