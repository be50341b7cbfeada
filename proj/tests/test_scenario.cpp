#include <doctest.h>

#include <cmath>

#include "tmalab/rng.hpp"
#include "tmalab/scenario.hpp"

using namespace tmalab;

namespace {

Scenario two_leg_scenario() {
    Scenario s;
    s.b0 = BearingDeg(45);
    s.target = {5000.0, CourseDeg(30), 5.0};
    s.ownship_start = {0, 0};
    s.legs = {{CourseDeg(100), 5.0, 600.0}, {CourseDeg(20), 5.0, 600.0}};
    s.ts = 10.0;
    s.n = 120;
    s.noise_sigma = 1.0;
    return s;
}

} // namespace

TEST_CASE("ownship_position_at integrates legs in order") {
    Scenario s = two_leg_scenario();
    s.legs = {{CourseDeg(90), 5.0, 600.0}};
    s.n = 3;
    s.ts = 10.0;
    Position p = ownship_position_at(s, 10.0);
    CHECK(p.x == doctest::Approx(50.0));
    CHECK(p.y == doctest::Approx(0.0).epsilon(1e-9));
    Position start = ownship_position_at(s, 0.0);
    CHECK(start.x == 0.0);
    CHECK(start.y == 0.0);

    Scenario two = two_leg_scenario();
    Position leg1_end = propagate({0, 0}, CourseDeg(100), 5.0, 600.0);
    Position expected = propagate(leg1_end, CourseDeg(20), 5.0, 100.0);
    Position got = ownship_position_at(two, 700.0);
    CHECK(got.x == doctest::Approx(expected.x).epsilon(1e-12));
    CHECK(got.y == doctest::Approx(expected.y).epsilon(1e-12));

    CHECK_THROWS_AS(ownship_position_at(two, -1.0), OutOfWindow);
    CHECK_THROWS_AS(ownship_position_at(two, 1200.5), OutOfWindow);
}

TEST_CASE("ownship path is continuous at leg boundaries") {
    Scenario s = two_leg_scenario();
    Position before = ownship_position_at(s, 600.0 - 1e-9);
    Position at = ownship_position_at(s, 600.0);
    Position after = ownship_position_at(s, 600.0 + 1e-9);
    CHECK(distance(before, at) < 1e-6);
    CHECK(distance(at, after) < 1e-6);
}

TEST_CASE("target_position_at composes the initial fix with propagation") {
    Scenario s = two_leg_scenario();
    Position t0 = target_position_at(s, 0.0);
    Position expected0 = initial_target_position(s.ownship_start, s.b0, s.target.r0);
    CHECK(t0.x == expected0.x);
    CHECK(t0.y == expected0.y);

    Position at_ts = target_position_at(s, s.ts);
    Position dir = compass_dir(30.0);
    CHECK(at_ts.x == doctest::Approx(expected0.x + 50.0 * dir.x).epsilon(1e-12));
    CHECK(at_ts.y == doctest::Approx(expected0.y + 50.0 * dir.y).epsilon(1e-12));

    s.target.speed = 0.0;
    Position frozen = target_position_at(s, 5000.0);
    CHECK(frozen.x == expected0.x);
    CHECK(frozen.y == expected0.y);
}

TEST_CASE("generate_bearings is deterministic and noiseless when sigma is zero") {
    Scenario s = two_leg_scenario();
    s.noise_sigma = 0.0;
    BearingSeries a = generate_bearings(s, 7);
    REQUIRE(a.size() == 120);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a.measured_bearings[k] == a.true_bearings[k]);
    }

    s.noise_sigma = 1.0;
    BearingSeries b = generate_bearings(s, 123);
    BearingSeries c = generate_bearings(s, 123);
    REQUIRE(b.size() == c.size());
    for (std::size_t k = 0; k < b.size(); ++k) {
        CHECK(b.measured_bearings[k] == c.measured_bearings[k]);
        CHECK(b.true_bearings[k] == c.true_bearings[k]);
    }
    BearingSeries d = generate_bearings(s, 124);
    bool differs = false;
    for (std::size_t k = 0; k < b.size(); ++k) {
        differs = differs || b.measured_bearings[k] != d.measured_bearings[k];
    }
    CHECK(differs);
}

TEST_CASE("bearing noise statistics match the configured sigma") {
    Scenario s;
    s.b0 = BearingDeg(45);
    s.target = {5000.0, CourseDeg(30), 5.0};
    s.legs = {{CourseDeg(100), 5.0, 10001.0}};
    s.ts = 1.0;
    s.n = 10000;
    s.noise_sigma = 1.0;
    BearingSeries series = generate_bearings(s, 99);
    double mean = 0.0;
    for (std::size_t k = 0; k < series.size(); ++k) {
        mean += wrap180(series.measured_bearings[k] - series.true_bearings[k]);
    }
    mean /= series.size();
    double var = 0.0;
    for (std::size_t k = 0; k < series.size(); ++k) {
        double d = wrap180(series.measured_bearings[k] - series.true_bearings[k]) - mean;
        var += d * d;
    }
    double stddev = std::sqrt(var / series.size());
    CHECK(std::abs(mean) <= 0.05);
    CHECK(stddev == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("generate_bearings rejects an ownship running over the target") {
    Scenario s;
    s.b0 = BearingDeg(0);
    s.target = {100.0, CourseDeg(0), 0.0}; // parked 100 m due North
    s.ownship_start = {0, 0};
    s.legs = {{CourseDeg(0), 10.0, 100.0}}; // drives through it at t=10
    s.ts = 10.0;
    s.n = 5;
    s.noise_sigma = 0.0;
    CHECK_THROWS_AS(generate_bearings(s, 1), DegenerateGeometry);
}

TEST_CASE("scenario validation rejects broken configurations") {
    Scenario s = two_leg_scenario();
    s.n = 2;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s = two_leg_scenario();
    s.ts = 0.0;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s = two_leg_scenario();
    s.noise_sigma = -0.1;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s = two_leg_scenario();
    s.legs.clear();
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s = two_leg_scenario();
    s.legs[1].duration = 100.0; // samples extend past the plan
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s = two_leg_scenario();
    s.target.r0 = 0.0;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    CHECK_NOTHROW(two_leg_scenario().validate());
}

TEST_CASE("derived seeds differ across indices and bases") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(0, 0) != derive_seed(0, 1));
}
