#pragma once

#include <cmath>

namespace tmalab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;

/// Remaps degrees onto [0, 360).
inline double wrap360(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) {
        r += 360.0;
    }
    // fmod of a slightly negative value can round back up to exactly 360
    return r == 360.0 ? 0.0 : r;
}

/// Remaps degrees onto (-180, 180]. -180 maps to +180.
inline double wrap180(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r <= -180.0) {
        r += 360.0;
    } else if (r > 180.0) {
        r -= 360.0;
    }
    return r;
}

/// Compass bearing: degrees clockwise from North (the +y axis), canonical in [0, 360).
struct BearingDeg {
    BearingDeg() = default;
    explicit BearingDeg(double deg) : value(wrap360(deg)) {}
    double value = 0.0;

    double rad() const { return value * kDegToRad; }
};

/// Compass course, same convention and canonical range as BearingDeg.
struct CourseDeg {
    CourseDeg() = default;
    explicit CourseDeg(double deg) : value(wrap360(deg)) {}
    double value = 0.0;

    double rad() const { return value * kDegToRad; }
};

} // namespace tmalab
