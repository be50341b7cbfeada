#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "tmalab/costs.hpp"
#include "tmalab/rng.hpp"

using namespace tmalab;

namespace {

// Bearing lines pointing due North from y = -1000 cut the x-axis track at
// the given abscissae, so segment lengths are the consecutive differences.
BearingSeries north_series(const std::vector<double>& xs) {
    BearingSeries s;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        s.times.push_back(10.0 * static_cast<double>(k));
        s.true_bearings.push_back(0.0);
        s.measured_bearings.push_back(0.0);
        s.ownship_positions.push_back({xs[k], -1000.0});
    }
    return s;
}

SegmentStats x_axis_stats(const std::vector<double>& xs) {
    return segment_stats(north_series(xs), CandidateTrack{1000.0, CourseDeg(90)},
                         Position{0.0, -1000.0}, BearingDeg(0));
}

Scenario wide_fan_scenario(double noise_sigma) {
    Scenario s;
    s.b0 = BearingDeg(45);
    s.target = {5000.0, CourseDeg(170), 5.0};
    s.ownship_start = {0, 0};
    s.legs = {{CourseDeg(100), 5.0, 360.0}, {CourseDeg(350), 5.0, 360.0}};
    s.ts = 120.0;
    s.n = 7;
    s.noise_sigma = noise_sigma;
    return s;
}

} // namespace

TEST_CASE("segment_stats recovers hand-built collinear intersections") {
    SegmentStats stats = x_axis_stats({0.0, 90.0, 200.0});
    REQUIRE(stats.segment_lengths.size() == 2);
    CHECK(stats.segment_lengths[0] == doctest::Approx(90.0).epsilon(1e-13));
    CHECK(stats.segment_lengths[1] == doctest::Approx(110.0).epsilon(1e-13));
    CHECK(stats.d_mean == doctest::Approx(100.0).epsilon(1e-13));
    CHECK(stats.intersection_points[1].x == doctest::Approx(90.0).epsilon(1e-13));
    CHECK(std::abs(stats.intersection_points[1].y) < 1e-9);
}

TEST_CASE("segment_stats on a noiseless true candidate gives equal segments") {
    Scenario s = wide_fan_scenario(0.0);
    BearingSeries series = generate_bearings(s, 5);
    SegmentStats stats = segment_stats(series, CandidateTrack{5000.0, CourseDeg(170)},
                                        s.ownship_start, s.b0);
    for (double d : stats.segment_lengths) {
        CHECK(d == doctest::Approx(5.0 * 120.0).epsilon(1e-9));
    }
    CHECK(cost_equidistant(stats) < 1e-9);
    CHECK(derive_speed(stats, s.ts) == doctest::Approx(5.0).epsilon(1e-7));
}

TEST_CASE("segment_stats rejects singular and collapsed candidates") {
    // bearing due North, candidate track due North: parallel
    CHECK_THROWS_AS(segment_stats(north_series({0, 90, 200}),
                                  CandidateTrack{1000.0, CourseDeg(0)},
                                  Position{0.0, -1000.0}, BearingDeg(0)),
                    SingularCandidate);
    // all bearing lines identical: every intersection collapses to one point
    CHECK_THROWS_AS(x_axis_stats({0.0, 0.0, 0.0}), DegenerateTrack);
}

TEST_CASE("segment_stats intersections match the sampling oracle under noise") {
    Scenario s = wide_fan_scenario(1.0);
    BearingSeries series = generate_bearings(s, 21);
    CandidateTrack cand{5000.0, CourseDeg(170)};
    SegmentStats stats = segment_stats(series, cand, s.ownship_start, s.b0);
    Position anchor = initial_target_position(s.ownship_start, s.b0, cand.r0);
    for (std::size_t k = 0; k < series.size(); ++k) {
        Position slow = oracles::intersect_by_sampling(
            series.ownship_positions[k], series.measured_bearings[k], anchor, 170.0);
        CHECK(distance(stats.intersection_points[k], slow) < 0.5);
    }
}

TEST_CASE("cost_equidistant hand values") {
    CHECK(cost_equidistant(x_axis_stats({0, 100, 200})) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cost_equidistant(x_axis_stats({0, 90, 200})) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(cost_equidistant(x_axis_stats({0, 50, 150, 300})) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cost_equidistant is scale invariant") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 3 + static_cast<std::size_t>(rng.next_unit() * 20);
        SegmentStats stats;
        double total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            stats.segment_lengths.push_back(10.0 + rng.next_unit() * 200.0);
            total += stats.segment_lengths.back();
        }
        stats.d_mean = total / n;
        double base = cost_equidistant(stats);

        double scale = 0.01 + rng.next_unit() * 1000.0;
        SegmentStats scaled;
        double scaled_total = 0.0;
        for (double d : stats.segment_lengths) {
            scaled.segment_lengths.push_back(scale * d);
            scaled_total += scale * d;
        }
        scaled.d_mean = scaled_total / n;
        CHECK(cost_equidistant(scaled) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("derive_speed divides total distance by total time") {
    SegmentStats even = x_axis_stats({0, 50, 100, 150});
    CHECK(derive_speed(even, 10.0) == doctest::Approx(5.0).epsilon(1e-12));
    SegmentStats uneven = x_axis_stats({0, 90, 200});
    CHECK(derive_speed(uneven, 20.0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK_THROWS_AS(derive_speed(even, 0.0), InvalidArgument);
}

TEST_CASE("cost_bearing_diff hand values and error paths") {
    std::vector<double> a{10, 20, 30};
    CHECK(cost_bearing_diff(a, a) == doctest::Approx(0.0));
    std::vector<double> m1{10}, e1{13};
    CHECK(cost_bearing_diff(m1, e1) == doctest::Approx(3.0).epsilon(1e-12));
    std::vector<double> m2{10, 20}, e2{13, 24};
    CHECK(cost_bearing_diff(m2, e2) == doctest::Approx(5.0).epsilon(1e-12));
    std::vector<double> bad{1, 2, 3};
    CHECK_THROWS_AS(cost_bearing_diff(m2, bad), ShapeError);
    std::vector<double> empty;
    CHECK_THROWS_AS(cost_bearing_diff(empty, empty), ShapeError);
}

TEST_CASE("cost_bearing_diff wraps residuals and ignores whole turns") {
    std::vector<double> m{359.0}, e{1.0};
    CHECK(cost_bearing_diff(m, e) == doctest::Approx(2.0).epsilon(1e-12));

    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(rng.next_unit() * 12);
        std::vector<double> meas(n), est(n), est_shifted(n);
        for (std::size_t k = 0; k < n; ++k) {
            meas[k] = rng.next_unit() * 360.0;
            est[k] = rng.next_unit() * 360.0;
            est_shifted[k] = est[k] + 360.0 * std::floor(rng.next_unit() * 5.0);
        }
        double base = cost_bearing_diff(meas, est);
        CHECK(cost_bearing_diff(meas, est_shifted) == doctest::Approx(base).epsilon(1e-9));

        // jointly permuting the pairs leaves the cost unchanged
        std::vector<std::size_t> order(n);
        for (std::size_t k = 0; k < n; ++k) {
            order[k] = k;
        }
        for (std::size_t k = n; k > 1; --k) {
            std::swap(order[k - 1], order[static_cast<std::size_t>(rng.next_unit() * k)]);
        }
        std::vector<double> pm(n), pe(n);
        for (std::size_t k = 0; k < n; ++k) {
            pm[k] = meas[order[k]];
            pe[k] = est[order[k]];
        }
        CHECK(cost_bearing_diff(pm, pe) == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("predicted_bearings reproduces the true bearings without noise") {
    Scenario s = wide_fan_scenario(0.0);
    BearingSeries series = generate_bearings(s, 3);
    std::vector<double> pred = predicted_bearings(s.target, s);
    REQUIRE(pred.size() == series.size());
    for (std::size_t k = 0; k < pred.size(); ++k) {
        CHECK(std::abs(wrap180(pred[k] - series.true_bearings[k])) < 1e-9);
    }
    CHECK(cost_bearing_diff(series.measured_bearings, pred) < 1e-9);
}

TEST_CASE("predicted_bearings of a stationary pair is constant") {
    Scenario s;
    s.b0 = BearingDeg(0);
    s.target = {4000.0, CourseDeg(77), 0.0};
    s.legs = {{CourseDeg(0), 0.0, 1000.0}};
    s.ts = 10.0;
    s.n = 50;
    s.noise_sigma = 0.0;
    std::vector<double> pred = predicted_bearings(s.target, s);
    for (double b : pred) {
        CHECK(b == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("predicted_bearings matches a direct per-sample recomputation") {
    Scenario s = wide_fan_scenario(1.0);
    TargetParams perturbed{s.target.r0 + 1000.0, s.target.course, s.target.speed};
    std::vector<double> pred = predicted_bearings(perturbed, s);
    Position dir = compass_dir(s.b0.value);
    double p0x = s.ownship_start.x + perturbed.r0 * dir.x;
    double p0y = s.ownship_start.y + perturbed.r0 * dir.y;
    Position vdir = compass_dir(perturbed.course.value);
    for (int k = 0; k < s.n; ++k) {
        double t = k * s.ts;
        Position own = ownship_position_at(s, t);
        double tx = p0x + t * perturbed.speed * vdir.x - own.x;
        double ty = p0y + t * perturbed.speed * vdir.y - own.y;
        double expect = wrap360(std::atan2(tx, ty) * kRadToDeg);
        CHECK(std::abs(wrap180(pred[k] - expect)) < 1e-9);
    }
    // and it differs from the unperturbed series
    std::vector<double> base = predicted_bearings(s.target, s);
    bool differs = false;
    for (std::size_t k = 0; k < pred.size(); ++k) {
        differs = differs || std::abs(pred[k] - base[k]) > 1e-6;
    }
    CHECK(differs);
}
