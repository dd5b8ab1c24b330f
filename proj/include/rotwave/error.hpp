#pragma once

#include <stdexcept>
#include <string>

namespace rotwave {

// Input outside the mathematical domain of an operation (x <= -1 for iota,
// x <= 0 for K_nu, p outside (2,4) for the Galerkin solver, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Input inside the domain but beyond the range the kernels are validated for.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

// An iteration or quadrature failed to reach its tolerance.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Inconsistent run configuration (e.g. a truncated basis with empty E+).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace rotwave
