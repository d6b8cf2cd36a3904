#pragma once

#include <stdexcept>
#include <string>

namespace snb {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed request (bad order, empty interval, unsupported class, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation ran but its own accuracy checks rejected the result.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Discretisation too coarse for the requested accuracy. Carries the
/// interval length at which the check tripped so callers can report it.
class ResolutionFailure : public NumericalFailure {
public:
    ResolutionFailure(const std::string& what, double s)
        : NumericalFailure(what), s_(s) {}
    double s() const noexcept { return s_; }

private:
    double s_;
};

/// Value requested at a point the table does not hold.
class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

} // namespace snb
