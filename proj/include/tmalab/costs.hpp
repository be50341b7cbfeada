#pragma once

#include <span>
#include <vector>

#include "tmalab/scenario.hpp"

namespace tmalab {

/// Candidate track for the equidistant cost: range and course only.
/// Speed is recovered afterwards from the segment statistics.
struct CandidateTrack {
    double r0 = 0.0;
    CourseDeg course;
};

/// Intersections of the measured bearing lines with one candidate track line,
/// the consecutive segment lengths, and their mean.
struct SegmentStats {
    std::vector<Position> intersection_points; // n
    std::vector<double> segment_lengths;       // n-1
    double d_mean = 0.0;
};

/// Mean segment length below this is a collapsed (degenerate) track.
inline constexpr double kDistEps = 1e-3;

/// Intersects every measured bearing line with the candidate track anchored at
/// initial_target_position(ownship_start, b0_hint, candidate.r0).
/// Throws SingularCandidate when any intersection is near-parallel and
/// DegenerateTrack when the mean segment length collapses.
SegmentStats segment_stats(const BearingSeries& series, const CandidateTrack& candidate,
                           Position ownship_start, BearingDeg b0_hint);

/// Sum of |(D_k - D_mean) / D_mean| over all segments. Dimensionless, >= 0.
double cost_equidistant(const SegmentStats& stats);

/// Target speed from the segment statistics: total distance / total time.
double derive_speed(const SegmentStats& stats, double ts);

/// sqrt of the summed squared bearing residuals, residuals wrapped to
/// (-180, 180] before squaring. Degrees, >= 0. Throws ShapeError on length
/// mismatch or empty input.
double cost_bearing_diff(std::span<const double> measured_deg,
                         std::span<const double> estimated_deg);

/// Bearings a candidate parameter triple would produce, anchored on anchor_b0.
std::vector<double> predicted_bearings(const TargetParams& params, const Scenario& scenario,
                                       BearingDeg anchor_b0);

/// Convenience overload anchored on the scenario's own initial bearing.
std::vector<double> predicted_bearings(const TargetParams& params, const Scenario& scenario);

} // namespace tmalab
