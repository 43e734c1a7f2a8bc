#pragma once

#include <stdexcept>

namespace warebot {

/// Base class for recoverable errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain (e.g. path parameter not in [0,1]).
struct DomainError : Error {
    using Error::Error;
};

/// Projection target has no feasible point.
struct EmptyRegion : Error {
    using Error::Error;
};

/// Construction preconditions violated (negative clearance, sensor range too short).
struct Degenerate : Error {
    using Error::Error;
};

/// Wall-following construction requested while clearance is not below the trigger band.
struct NotInDangerZone : Error {
    using Error::Error;
};

struct OutsideWorkspace : Error {
    using Error::Error;
};

struct MalformedScenario : Error {
    using Error::Error;
};

/// 2x2 kinematic map not invertible (zero-radius pushed object).
struct SingularJacobian : Error {
    using Error::Error;
};

/// The known map admits no corridor of the required clearance.
struct NoPath : Error {
    using Error::Error;
};

}  // namespace warebot
