#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracbl {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (bad parameter, pole, length mismatch).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// File could not be written or read.
class IoError : public Error {
public:
    using Error::Error;
};

/// Numerical breakdown; the CLI maps these to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class OverflowError : public NumericalError {
public:
    OverflowError(const std::string& what, double threshold)
        : NumericalError(what), threshold_(threshold) {}

    double threshold() const noexcept { return threshold_; }

private:
    double threshold_;
};

class NonConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RegimeAgreementError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularPivotError : public NumericalError {
public:
    SingularPivotError(const std::string& what, std::size_t node)
        : NumericalError(what), node_(node) {}

    /// Mesh node index of the equation whose pivot vanished.
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

}  // namespace fracbl
