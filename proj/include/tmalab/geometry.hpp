#pragma once

#include <cmath>

#include "tmalab/angles.hpp"
#include "tmalab/errors.hpp"

namespace tmalab {

/// Planar position, meters. x is East, y is North.
struct Position {
    double x = 0.0;
    double y = 0.0;

    friend Position operator+(Position a, Position b) { return {a.x + b.x, a.y + b.y}; }
    friend Position operator-(Position a, Position b) { return {a.x - b.x, a.y - b.y}; }
};

struct Velocity {
    double vx = 0.0; // m/s East
    double vy = 0.0; // m/s North
};

inline double distance(Position a, Position b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Unit direction of a compass angle: (sin, cos) so that 0 deg points North.
inline Position compass_dir(double deg) {
    double r = deg * kDegToRad;
    return {std::sin(r), std::cos(r)};
}

inline Velocity velocity_from(CourseDeg course, double speed) {
    Position d = compass_dir(course.value);
    return {speed * d.x, speed * d.y};
}

/// Tolerance on |sin(bearing - course)| below which two lines count as parallel.
inline constexpr double kParallelEps = 1e-6;

/// Full-circle compass bearing from observer to target.
/// Throws DegenerateGeometry when the points coincide.
BearingDeg bearing_of(Position observer, Position target);

/// Places the target on the bearing ray: ownship0 + r0 * (sin b0, cos b0).
/// Throws InvalidRange unless r0 > 0.
Position initial_target_position(Position ownship0, BearingDeg b0, double r0);

/// Constant-velocity displacement: p0 + t * speed * (sin course, cos course).
Position propagate(Position p0, CourseDeg course, double speed, double t);

/// Intersection of the infinite bearing line through ray_origin with the infinite
/// track line through track_point. Throws NearParallel when the direction vectors
/// are parallel within kParallelEps.
Position intersect_bearing_with_track(Position ray_origin, BearingDeg bearing,
                                      Position track_point, CourseDeg track_course);

} // namespace tmalab
