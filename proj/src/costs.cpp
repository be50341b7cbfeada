#include "tmalab/costs.hpp"

#include <cmath>

namespace tmalab {

SegmentStats segment_stats(const BearingSeries& series, const CandidateTrack& candidate,
                           Position ownship_start, BearingDeg b0_hint) {
    const std::size_t n = series.size();
    if (n < 3) {
        throw ShapeError("segment_stats: need at least 3 bearing samples");
    }
    Position anchor = initial_target_position(ownship_start, b0_hint, candidate.r0);

    SegmentStats stats;
    stats.intersection_points.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        try {
            stats.intersection_points.push_back(
                intersect_bearing_with_track(series.ownship_positions[k],
                                             BearingDeg(series.measured_bearings[k]),
                                             anchor, candidate.course));
        } catch (const NearParallel&) {
            throw SingularCandidate("segment_stats: bearing line parallel to candidate track");
        }
    }

    stats.segment_lengths.reserve(n - 1);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double d = distance(stats.intersection_points[k], stats.intersection_points[k + 1]);
        stats.segment_lengths.push_back(d);
        total += d;
    }
    stats.d_mean = total / static_cast<double>(n - 1);
    if (stats.d_mean < kDistEps) {
        throw DegenerateTrack("segment_stats: mean segment length collapsed");
    }
    return stats;
}

double cost_equidistant(const SegmentStats& stats) {
    if (!(stats.d_mean > kDistEps)) {
        throw DegenerateTrack("cost_equidistant: mean segment length collapsed");
    }
    double cost = 0.0;
    for (double d : stats.segment_lengths) {
        cost += std::abs((d - stats.d_mean) / stats.d_mean);
    }
    return cost;
}

double derive_speed(const SegmentStats& stats, double ts) {
    if (!(ts > 0.0)) {
        throw InvalidArgument("derive_speed: ts must be > 0");
    }
    if (stats.segment_lengths.empty()) {
        throw ShapeError("derive_speed: no segments");
    }
    double total = 0.0;
    for (double d : stats.segment_lengths) {
        total += d;
    }
    return total / (static_cast<double>(stats.segment_lengths.size()) * ts);
}

double cost_bearing_diff(std::span<const double> measured_deg,
                         std::span<const double> estimated_deg) {
    if (measured_deg.size() != estimated_deg.size()) {
        throw ShapeError("cost_bearing_diff: series lengths differ");
    }
    if (measured_deg.empty()) {
        throw ShapeError("cost_bearing_diff: empty series");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < measured_deg.size(); ++k) {
        double d = wrap180(measured_deg[k] - estimated_deg[k]);
        acc += d * d;
    }
    return std::sqrt(acc);
}

std::vector<double> predicted_bearings(const TargetParams& params, const Scenario& scenario,
                                       BearingDeg anchor_b0) {
    Position p0 = initial_target_position(scenario.ownship_start, anchor_b0, params.r0);
    Velocity vel = velocity_from(params.course, params.speed);
    std::vector<double> bearings;
    bearings.reserve(scenario.n);
    for (int k = 0; k < scenario.n; ++k) {
        double t = static_cast<double>(k) * scenario.ts;
        Position own = ownship_position_at(scenario, t);
        Position tgt{p0.x + t * vel.vx, p0.y + t * vel.vy};
        bearings.push_back(bearing_of(own, tgt).value);
    }
    return bearings;
}

std::vector<double> predicted_bearings(const TargetParams& params, const Scenario& scenario) {
    return predicted_bearings(params, scenario, scenario.b0);
}

} // namespace tmalab
