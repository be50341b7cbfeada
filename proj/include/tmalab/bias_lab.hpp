#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tmalab/geometry.hpp"
#include "tmalab/rng.hpp"

namespace tmalab {

/// Two-point transformation-bias experiment configuration. Ownship starts at
/// the origin; both platforms advance one sampling interval along their
/// courses between the two bearing measurements.
struct BiasConfig {
    double r0 = 5000.0;          // meters
    BearingDeg b0{45.0};
    CourseDeg target_course{30.0};
    double target_speed = 5.0;   // m/s
    CourseDeg ownship_course{90.0};
    double ownship_speed = 5.0;  // m/s
    double ts = 150.0;           // seconds between the two measurements
    double noise_sigma = 1.0;    // degrees
    int runs = 100000;

    void validate() const; // throws InvalidArgument; runs >= 1000 for a reportable kurtosis
};

struct Histogram {
    std::vector<double> bin_edges;   // counts.size() + 1 edges; last edge is +inf (overflow bin)
    std::vector<std::uint64_t> counts;
};

/// Empirical summary of the segment-length distribution.
struct BiasReport {
    std::uint64_t runs_kept = 0;
    std::uint64_t runs_rejected = 0; // near-parallel draws, resampled
    double mean = 0.0;               // meters
    double std_dev = 0.0;            // meters, population normalization
    double kurtosis = 0.0;           // m4 / m2^2
    Histogram histogram;
    bool geometry_warning = false;   // more than 1% of draws rejected
};

/// Standardized fourth central moment m4 / m2^2, population normalization.
/// Throws InvalidArgument for n < 4 and DegenerateDistribution on zero variance.
double kurtosis(std::span<const double> samples);

/// One Monte Carlo draw: two independent noisy bearings, each intersected with
/// the true target track line; returns |P1 - P0| in meters. Consumes exactly
/// two Gaussian variates from rng before it can throw RejectedDraw.
double segment_sample(const BiasConfig& config, Rng& rng);

/// Single-draw form: one attempt from a fresh stream seeded with seed.
double segment_sample(const BiasConfig& config, std::uint64_t seed);

/// Collects config.runs accepted segment samples (rejected draws are resampled
/// from the same per-sample stream and counted), then reports mean, standard
/// deviation, kurtosis and a histogram of 100 equal-width bins over
/// [0, mean + 6*std] plus an overflow bin. Deterministic in (config, seed);
/// sample i always uses the stream seeded with derive_seed(seed, i), so
/// parallel generation reproduces the sequential report.
BiasReport bias_experiment(const BiasConfig& config, std::uint64_t seed, int threads = 0);

struct SweepPoint {
    double r0 = 0.0;
    double kurtosis = 0.0;
    bool ok = false;
    std::string error;
};

/// One bias_experiment per range value, seeds derived per value; failures are
/// recorded in the output instead of aborting the sweep.
std::vector<SweepPoint> range_sweep(const BiasConfig& config, std::span<const double> r0_values,
                                    std::uint64_t seed, int threads = 0);

} // namespace tmalab
