#pragma once

#include <stdexcept>
#include <string>

namespace qperisk {

/// Invalid argument or precondition violation (bad m, ω outside its window, kmax too small, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A loss or run configuration that cannot be evaluated (e.g. a custom loss without an evaluator).
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite input, solver failure or degenerate evidence.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qperisk
