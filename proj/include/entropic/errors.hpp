#pragma once

#include <stdexcept>
#include <string>

namespace entropic {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Grid construction or compatibility problem (mismatched grids, too few points, ...).
class GridError : public Error {
public:
    explicit GridError(const std::string& msg) : Error(msg) {}
};

/// A density assigns mass where the reference density has none.
class AbsoluteContinuityError : public Error {
public:
    explicit AbsoluteContinuityError(const std::string& msg) : Error(msg) {}
};

/// The analytic mass of a belief extends beyond the grid by more than the tolerance.
class GridTooNarrowError : public GridError {
public:
    explicit GridTooNarrowError(const std::string& msg) : GridError(msg) {}
};

/// Total weighted mass vanished, attention undefined.
class ZeroMassError : public Error {
public:
    explicit ZeroMassError(const std::string& msg) : Error(msg) {}
};

/// The requested moment lies outside the achievable set of the prior/topic pair.
class InfeasibleMomentError : public Error {
public:
    explicit InfeasibleMomentError(const std::string& msg) : Error(msg) {}
};

/// An iterative solver did not reach its tolerance within the iteration budget.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

/// A matrix required to be invertible is singular (after jitter).
class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& msg) : Error(msg) {}
};

}  // namespace entropic
