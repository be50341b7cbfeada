#include "tmalab/scenario.hpp"

#include "tmalab/rng.hpp"

namespace tmalab {

double Scenario::total_leg_duration() const {
    double total = 0.0;
    for (const auto& leg : legs) {
        total += leg.duration;
    }
    return total;
}

void Scenario::validate() const {
    if (!(target.r0 > 0.0)) {
        throw InvalidArgument("scenario: target r0 must be > 0");
    }
    if (target.speed < 0.0) {
        throw InvalidArgument("scenario: target speed must be >= 0");
    }
    if (legs.empty()) {
        throw InvalidArgument("scenario: at least one ownship leg required");
    }
    for (const auto& leg : legs) {
        if (!(leg.duration > 0.0)) {
            throw InvalidArgument("scenario: leg duration must be > 0");
        }
        if (leg.speed < 0.0) {
            throw InvalidArgument("scenario: leg speed must be >= 0");
        }
    }
    if (n < 3) {
        throw InvalidArgument("scenario: need at least 3 bearing samples");
    }
    if (!(ts > 0.0)) {
        throw InvalidArgument("scenario: sampling interval must be > 0");
    }
    if (noise_sigma < 0.0) {
        throw InvalidArgument("scenario: noise sigma must be >= 0");
    }
    if (total_leg_duration() < static_cast<double>(n - 1) * ts) {
        throw InvalidArgument("scenario: legs end before the last bearing sample");
    }
}

Position ownship_position_at(const Scenario& scenario, double t) {
    if (t < 0.0) {
        throw OutOfWindow("ownship_position_at: t < 0");
    }
    Position p = scenario.ownship_start;
    double remaining = t;
    for (const auto& leg : scenario.legs) {
        if (remaining <= leg.duration) {
            return propagate(p, leg.course, leg.speed, remaining);
        }
        p = propagate(p, leg.course, leg.speed, leg.duration);
        remaining -= leg.duration;
    }
    if (remaining > 0.0) {
        throw OutOfWindow("ownship_position_at: t beyond the leg schedule");
    }
    return p;
}

Position target_position_at(const Scenario& scenario, double t) {
    Position p0 = initial_target_position(scenario.ownship_start, scenario.b0, scenario.target.r0);
    return propagate(p0, scenario.target.course, scenario.target.speed, t);
}

BearingSeries generate_bearings(const Scenario& scenario, std::uint64_t seed) {
    scenario.validate();
    Rng rng(seed);
    BearingSeries series;
    series.times.reserve(scenario.n);
    series.true_bearings.reserve(scenario.n);
    series.measured_bearings.reserve(scenario.n);
    series.ownship_positions.reserve(scenario.n);
    for (int k = 0; k < scenario.n; ++k) {
        double t = static_cast<double>(k) * scenario.ts;
        Position own = ownship_position_at(scenario, t);
        Position tgt = target_position_at(scenario, t);
        double truth = bearing_of(own, tgt).value;
        double measured = wrap360(truth + scenario.noise_sigma * rng.next_gaussian());
        series.times.push_back(t);
        series.true_bearings.push_back(truth);
        series.measured_bearings.push_back(measured);
        series.ownship_positions.push_back(own);
    }
    return series;
}

} // namespace tmalab
