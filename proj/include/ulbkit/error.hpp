#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace ulbkit {

/// Base of every exception thrown by the library. `kind()` is a stable,
/// machine-readable tag used by the CLI error objects.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept = 0;
    /// Input problems map to exit code 2, numerical failures to 1.
    virtual bool is_validation_error() const noexcept { return true; }
};

class ParameterError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "parameter_error"; }
};

class DegreeOverflow : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "degree_overflow"; }
};

class DomainError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "domain_error"; }
};

class PreconditionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "precondition_error"; }
};

class NumericalError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "numerical_error"; }
    bool is_validation_error() const noexcept override { return false; }
};

/// A candidate polynomial failed one of the LP conditions (D1, E2, F1, ...).
class ConditionViolation : public Error {
public:
    ConditionViolation(std::string condition, std::string message,
                       std::optional<int> index = {}, std::optional<double> point = {})
        : Error(condition + ": " + message),
          condition_(std::move(condition)), index_(index), point_(point) {}

    const char* kind() const noexcept override { return "condition_violation"; }
    const std::string& condition() const noexcept { return condition_; }
    std::optional<int> index() const noexcept { return index_; }
    std::optional<double> point() const noexcept { return point_; }

private:
    std::string condition_;
    std::optional<int> index_;
    std::optional<double> point_;
};

struct Tolerance {
    double abs = 1e-9;
    double rel = 1e-9;

    double scaled(double magnitude) const { return abs + rel * magnitude; }
    bool close(double a, double b) const {
        double m = std::max(a < 0 ? -a : a, b < 0 ? -b : b);
        double d = a - b;
        return (d < 0 ? -d : d) <= scaled(m);
    }
};

}  // namespace ulbkit
