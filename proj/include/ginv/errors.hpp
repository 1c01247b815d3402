#pragma once

#include <stdexcept>
#include <string>

namespace ginv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates an operation's documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Raised when a group (or core) inverse is requested for a matrix of index > 1.
class NotGroupInvertible : public PreconditionError {
public:
    explicit NotGroupInvertible(int index)
        : PreconditionError("matrix is not group invertible: index = " + std::to_string(index)),
          index_(index) {}

    int index() const noexcept { return index_; }

private:
    int index_;
};

/// Floating-point computation could not produce a trustworthy answer.
class NumericalError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IllConditioned : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DefiningEquationViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The brute-force solver found no matrix satisfying the defining system.
class InconsistentSystem : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace ginv
