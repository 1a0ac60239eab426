#pragma once

#include <stdexcept>
#include <string>

namespace jordan {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed construction input: degenerate segment, zero vector, bad interval.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Parameter outside the path's interval, or a one-sided derivative that does not exist.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Two lines meet at an angle below the tolerance.
class NotUnique : public Error {
public:
    using Error::Error;
};

/// Query point has no positive carrier-distance lower bound.
class PointTooClose : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature hit its depth cap before the requested error budget.
class BudgetNotMet : public Error {
public:
    using Error::Error;
};

/// The two point-classification oracles returned different indexes.
class OracleDisagreement : public Error {
public:
    using Error::Error;
};

/// Normal walk could not separate an Inside from an Outside witness.
class WitnessNotFound : public Error {
public:
    using Error::Error;
};

/// Region sampling produced no point of the requested region.
class EmptyRegion : public Error {
public:
    using Error::Error;
};

}  // namespace jordan
