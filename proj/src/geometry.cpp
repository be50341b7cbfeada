#include "tmalab/geometry.hpp"

namespace tmalab {

BearingDeg bearing_of(Position observer, Position target) {
    double dx = target.x - observer.x;
    double dy = target.y - observer.y;
    if (dx == 0.0 && dy == 0.0) {
        throw DegenerateGeometry("bearing_of: observer and target coincide");
    }
    // atan2 of (East, North) gives the clockwise-from-North convention directly.
    return BearingDeg(std::atan2(dx, dy) * kRadToDeg);
}

Position initial_target_position(Position ownship0, BearingDeg b0, double r0) {
    if (!(r0 > 0.0)) {
        throw InvalidRange("initial_target_position: r0 must be > 0");
    }
    Position d = compass_dir(b0.value);
    return {ownship0.x + r0 * d.x, ownship0.y + r0 * d.y};
}

Position propagate(Position p0, CourseDeg course, double speed, double t) {
    if (speed < 0.0) {
        throw InvalidArgument("propagate: speed must be >= 0");
    }
    if (t < 0.0) {
        throw InvalidArgument("propagate: t must be >= 0");
    }
    Position d = compass_dir(course.value);
    double s = t * speed;
    return {p0.x + s * d.x, p0.y + s * d.y};
}

Position intersect_bearing_with_track(Position ray_origin, BearingDeg bearing,
                                      Position track_point, CourseDeg track_course) {
    Position u = compass_dir(bearing.value);
    Position v = compass_dir(track_course.value);
    // Both directions are unit vectors, so the cross product is sin(bearing - course).
    double den = u.x * v.y - u.y * v.x;
    if (std::abs(den) < kParallelEps) {
        throw NearParallel("intersect_bearing_with_track: lines parallel within tolerance");
    }
    double wx = track_point.x - ray_origin.x;
    double wy = track_point.y - ray_origin.y;
    double t = (wx * v.y - wy * v.x) / den;
    return {ray_origin.x + t * u.x, ray_origin.y + t * u.y};
}

} // namespace tmalab
