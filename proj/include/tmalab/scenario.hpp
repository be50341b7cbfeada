#pragma once

#include <cstdint>
#include <vector>

#include "tmalab/geometry.hpp"

namespace tmalab {

/// The estimated triple defining a constant-velocity track.
struct TargetParams {
    double r0 = 0.0;     // initial range, meters
    CourseDeg course;    // degrees clockwise from North
    double speed = 0.0;  // m/s
};

/// One constant-course, constant-speed piece of the ownship plan.
struct OwnshipLeg {
    CourseDeg course;
    double speed = 0.0;    // m/s
    double duration = 0.0; // seconds
};

/// Full experiment geometry. Immutable value; validate() checks the invariants.
struct Scenario {
    BearingDeg b0;                // true initial bearing
    TargetParams target;          // true target parameters
    Position ownship_start;
    std::vector<OwnshipLeg> legs; // executed in order
    double ts = 10.0;             // sampling interval, seconds
    int n = 120;                  // bearing sample count
    double noise_sigma = 1.0;     // bearing noise std dev, degrees

    double total_leg_duration() const;
    void validate() const; // throws InvalidArgument describing the first violated invariant
};

/// Ordered bearing samples with the ownship positions they were taken from.
/// Bearings are degrees in [0, 360); times are k * ts.
struct BearingSeries {
    std::vector<double> times;
    std::vector<double> true_bearings;
    std::vector<double> measured_bearings;
    std::vector<Position> ownship_positions;

    std::size_t size() const { return times.size(); }
};

/// Ownship position from piecewise-constant-velocity integration of the legs.
/// Throws OutOfWindow unless 0 <= t <= total leg duration.
Position ownship_position_at(const Scenario& scenario, double t);

/// True target position: initial position from (b0, r0) advanced along the course.
Position target_position_at(const Scenario& scenario, double t);

/// Samples true bearings at k * ts for k = 0..n-1 and adds N(0, noise_sigma^2)
/// degrees of measurement noise, wrapped to [0, 360). Pure function of
/// (scenario, seed). Throws DegenerateGeometry if the platforms coincide at a
/// sample time.
BearingSeries generate_bearings(const Scenario& scenario, std::uint64_t seed);

} // namespace tmalab
