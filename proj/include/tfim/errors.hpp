#pragma once

#include <stdexcept>
#include <string>

namespace tfim {

/// Lattice dimensions outside the supported range.
class InvalidDimension : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A parameter combination with no real solution (e.g. |h / (2J)| > 1).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A two-qubit gate whose qubits live on non-adjacent MPS sites was handed to
/// the adjacent-only gate path.
class RoutingRequired : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// The requested computation would exceed a configured memory cap.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad or inconsistent inputs to a numerical routine (length mismatch,
/// values outside their admissible range, rank-deficient fits).
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Unreadable or inconsistent run configuration.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace tfim
