#pragma once

#include <stdexcept>
#include <string>

namespace fineq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A transfer stage whose parameters violate a feasibility constraint.
/// `constraint()` names the violated condition.
class InfeasibleError : public Error {
public:
    InfeasibleError(std::string constraint, const std::string& what)
        : Error(what), constraint_(std::move(constraint)) {}
    const std::string& constraint() const noexcept { return constraint_; }

private:
    std::string constraint_;
};

/// Argument outside the domain of a profile, kernel or estimator.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or degenerate input data (ensembles, files, samples).
class DataError : public Error {
public:
    using Error::Error;
};

/// A computation lost the accuracy it needs (degenerate frame, failed quadrature).
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace fineq
