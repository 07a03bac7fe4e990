#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace growthopt {

/// Raised when an operation is evaluated outside its mathematical domain
/// (negative capital, saving rate outside [0,1], malformed function tables).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised by solvers on internal inconsistencies (grid too small, state
/// leaving the admissible set).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario configuration rejected at load. `field()` names the offending
/// JSON path, e.g. "problem.sigma".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace growthopt
