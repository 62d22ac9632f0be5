#pragma once

#include <stdexcept>
#include <string>

namespace psiham {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A user-supplied callable produced a non-finite value.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

/// Difference step too large for the requested interval.
class StepError : public Error {
public:
    using Error::Error;
};

/// Gamma function evaluated at a pole (0, -1, -2, ...).
class PoleError : public Error {
public:
    using Error::Error;
};

/// Series failed to converge within the term budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Spatial expression of the wrong variant passed to an operator.
class VariantError : public Error {
public:
    using Error::Error;
};

/// Mismatched list lengths in a convolution-style sum.
class LengthError : public Error {
public:
    using Error::Error;
};

/// Recursion invoked with an incomplete set of previous orders.
class OrderError : public Error {
public:
    using Error::Error;
};

/// Auxiliary parameter outside the geometric convergence region |1+h| < 1.
class ConvergenceRegionError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a point where the expression is singular (r = 0).
class SingularPointError : public Error {
public:
    using Error::Error;
};

/// Computed series order disagrees with the reference table.
class MismatchError : public Error {
public:
    using Error::Error;
};

/// Problem constructed with a missing, extra, or invalid parameter.
class ParameterError : public Error {
public:
    using Error::Error;
};

}  // namespace psiham
