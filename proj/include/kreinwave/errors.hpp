#pragma once

#include <stdexcept>
#include <string>

namespace kreinwave {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Interval or index outside the grid.
struct RangeError : Error {
    using Error::Error;
};

/// Mismatched grids or sequence lengths.
struct ShapeError : Error {
    using Error::Error;
};

/// Input violates a domain precondition (non-real data, bad window, ...).
struct DomainError : Error {
    using Error::Error;
};

/// NaN/overflow during integration.
struct DivergenceError : Error {
    using Error::Error;
};

/// Zero-norm or otherwise degenerate input.
struct DegenerateInputError : Error {
    using Error::Error;
};

/// A limit did not settle within the requested tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Szego function too close to a real zero; measure construction refused.
struct SingularPartError : Error {
    using Error::Error;
};

} // namespace kreinwave
