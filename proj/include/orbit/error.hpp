#pragma once

#include <stdexcept>
#include <string>

namespace orbit {

/// Rejected input: out-of-domain parameters, malformed states or grids.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A result (or an unavoidable intermediate) exceeds the double range.
class OverflowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// An iterative solver or extrapolation did not converge.
class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace orbit
