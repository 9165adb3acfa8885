#pragma once

#include <stdexcept>
#include <string>

namespace agum {

// Bad argument values (negative index, non-finite coordinate, broken ordering).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A request bigger than the implementation is willing to handle.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Root finder / eigensolver / overflow failures.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Quadrature did not reach the requested tolerance; carries the best estimate.
class AccuracyError : public NumericError {
public:
    AccuracyError(const std::string& what, double estimate, double error)
        : NumericError(what), estimate_(estimate), error_(error) {}
    double estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

// An exact formula produced something it provably cannot (e.g. a non-integer count).
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace agum
