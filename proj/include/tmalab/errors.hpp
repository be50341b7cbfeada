#pragma once

#include <stdexcept>
#include <string>

namespace tmalab {

/// Base for every domain error thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Observer and target coincide; no bearing exists.
struct DegenerateGeometry : Error {
    using Error::Error;
};

/// A range parameter that must be positive was not.
struct InvalidRange : Error {
    using Error::Error;
};

/// Generic precondition violation (negative speed, negative time, ...).
struct InvalidArgument : Error {
    using Error::Error;
};

/// Bearing line and track line are parallel within tolerance.
struct NearParallel : Error {
    using Error::Error;
};

/// Time outside the ownship leg schedule.
struct OutOfWindow : Error {
    using Error::Error;
};

/// A candidate track whose bearing-line intersections do not all exist.
struct SingularCandidate : Error {
    using Error::Error;
};

/// Segment statistics collapsed (mean segment length below tolerance).
struct DegenerateTrack : Error {
    using Error::Error;
};

/// Mismatched series lengths.
struct ShapeError : Error {
    using Error::Error;
};

struct EmptySearchSpace : Error {
    using Error::Error;
};

/// Every grid cell evaluated to an infinite cost.
struct NoFeasibleCandidate : Error {
    using Error::Error;
};

/// Zero-variance sample set; kurtosis undefined.
struct DegenerateDistribution : Error {
    using Error::Error;
};

/// One Monte Carlo draw produced a near-parallel intersection.
struct RejectedDraw : Error {
    using Error::Error;
};

/// Config file could not be parsed or validated. Carries a line number when known.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what, int line = 0) : Error(what), line_number(line) {}
    int line_number = 0;
};

} // namespace tmalab
