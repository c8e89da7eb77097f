#pragma once

#include <stdexcept>
#include <string>

namespace scp {

/// Base class of every error raised by the solver library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A callback returned NaN or Inf; the iterate left the region where the problem is smooth.
class NonFiniteValue : public Error {
public:
    using Error::Error;
};

class UnknownProblem : public Error {
public:
    explicit UnknownProblem(const std::string& name) : Error("unknown problem '" + name + "'") {}
};

/// The constraint Jacobian failed the LICQ rank test.
class RankDeficient : public Error {
public:
    using Error::Error;
};

/// An inexact range-space solve could not certify its residual bound.
class ResidualConditionUnmet : public Error {
public:
    using Error::Error;
};

class SecularSolveFailed : public Error {
public:
    using Error::Error;
};

/// The merit model predicted no decrease at a point that is not second-order stationary.
class NonpositivePredictedReduction : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class InsufficientHistory : public Error {
public:
    using Error::Error;
};

class TraceParseError : public Error {
public:
    using Error::Error;
};

}  // namespace scp
