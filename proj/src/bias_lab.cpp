#include "tmalab/bias_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "tmalab/parallel.hpp"

namespace tmalab {

namespace {
// Attempts per accepted sample before giving up on a geometry where the
// bearing noise keeps landing parallel to the track.
constexpr int kMaxAttempts = 10000;
} // namespace

void BiasConfig::validate() const {
    if (!(r0 > 0.0)) {
        throw InvalidArgument("bias config: r0 must be > 0");
    }
    if (target_speed < 0.0 || ownship_speed < 0.0) {
        throw InvalidArgument("bias config: speeds must be >= 0");
    }
    if (!(ts > 0.0)) {
        throw InvalidArgument("bias config: ts must be > 0");
    }
    if (noise_sigma < 0.0) {
        throw InvalidArgument("bias config: noise sigma must be >= 0");
    }
    if (runs < 1000) {
        throw InvalidArgument("bias config: need at least 1000 runs for a reportable kurtosis");
    }
}

double kurtosis(std::span<const double> samples) {
    if (samples.size() < 4) {
        throw InvalidArgument("kurtosis: need at least 4 samples");
    }
    const double n = static_cast<double>(samples.size());
    double lo = samples[0], hi = samples[0];
    double mean = 0.0;
    for (double x : samples) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
        mean += x;
    }
    if (lo == hi) {
        throw DegenerateDistribution("kurtosis: zero sample variance");
    }
    mean /= n;
    double m2 = 0.0;
    double m4 = 0.0;
    for (double x : samples) {
        double d = x - mean;
        double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    if (m2 == 0.0) {
        throw DegenerateDistribution("kurtosis: zero sample variance");
    }
    return m4 / (m2 * m2);
}

double segment_sample(const BiasConfig& config, Rng& rng) {
    const Position o0{0.0, 0.0};
    const Position t0 = initial_target_position(o0, config.b0, config.r0);
    const Position o1 = propagate(o0, config.ownship_course, config.ownship_speed, config.ts);
    const Position t1 = propagate(t0, config.target_course, config.target_speed, config.ts);
    const double th0 = bearing_of(o0, t0).value;
    const double th1 = bearing_of(o1, t1).value;

    // Draw both variates up front so a rejected attempt always consumes
    // exactly two, keeping the stream position independent of where it failed.
    const double g0 = rng.next_gaussian();
    const double g1 = rng.next_gaussian();
    const BearingDeg m0(th0 + config.noise_sigma * g0);
    const BearingDeg m1(th1 + config.noise_sigma * g1);
    try {
        Position p0 = intersect_bearing_with_track(o0, m0, t0, config.target_course);
        Position p1 = intersect_bearing_with_track(o1, m1, t0, config.target_course);
        return distance(p0, p1);
    } catch (const NearParallel&) {
        throw RejectedDraw("segment_sample: noisy bearing parallel to the track");
    }
}

double segment_sample(const BiasConfig& config, std::uint64_t seed) {
    config.validate();
    Rng rng(seed);
    return segment_sample(config, rng);
}

BiasReport bias_experiment(const BiasConfig& config, std::uint64_t seed, int threads) {
    config.validate();

    const std::size_t runs = static_cast<std::size_t>(config.runs);
    std::vector<double> samples(runs);
    std::atomic<std::uint64_t> rejected{0};

    parallel_chunks(runs, resolve_threads(threads),
                    [&](unsigned, std::size_t begin, std::size_t end) {
        std::uint64_t local_rejected = 0;
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng(derive_seed(seed, i));
            int attempt = 0;
            for (;;) {
                try {
                    samples[i] = segment_sample(config, rng);
                    break;
                } catch (const RejectedDraw&) {
                    ++local_rejected;
                    if (++attempt >= kMaxAttempts) {
                        throw Error("bias_experiment: geometry keeps rejecting draws");
                    }
                }
            }
        }
        rejected.fetch_add(local_rejected, std::memory_order_relaxed);
    });

    BiasReport report;
    report.runs_kept = runs;
    report.runs_rejected = rejected.load();
    report.geometry_warning =
        static_cast<double>(report.runs_rejected) > 0.01 * static_cast<double>(runs);

    double sample_min = samples[0], sample_max = samples[0];
    double mean = 0.0;
    for (double x : samples) {
        sample_min = std::min(sample_min, x);
        sample_max = std::max(sample_max, x);
        mean += x;
    }
    if (sample_min == sample_max) {
        throw DegenerateDistribution("bias_experiment: every segment sample identical");
    }
    mean /= static_cast<double>(runs);
    double m2 = 0.0;
    for (double x : samples) {
        double d = x - mean;
        m2 += d * d;
    }
    m2 /= static_cast<double>(runs);
    if (m2 == 0.0) {
        throw DegenerateDistribution("bias_experiment: zero sample variance");
    }
    report.mean = mean;
    report.std_dev = std::sqrt(m2);
    report.kurtosis = kurtosis(samples);

    constexpr std::size_t kBins = 100;
    const double hi = report.mean + 6.0 * report.std_dev;
    const double width = hi / static_cast<double>(kBins);
    report.histogram.counts.assign(kBins + 1, 0); // last bin holds the overflow
    report.histogram.bin_edges.resize(kBins + 2);
    for (std::size_t b = 0; b <= kBins; ++b) {
        report.histogram.bin_edges[b] = width * static_cast<double>(b);
    }
    report.histogram.bin_edges[kBins + 1] = std::numeric_limits<double>::infinity();
    for (double x : samples) {
        std::size_t bin = x >= hi ? kBins : static_cast<std::size_t>(x / width);
        if (bin > kBins) {
            bin = kBins;
        }
        ++report.histogram.counts[bin];
    }
    return report;
}

std::vector<SweepPoint> range_sweep(const BiasConfig& config, std::span<const double> r0_values,
                                    std::uint64_t seed, int threads) {
    if (r0_values.empty()) {
        throw InvalidArgument("range_sweep: no range values");
    }
    std::vector<SweepPoint> points;
    points.reserve(r0_values.size());
    for (std::size_t i = 0; i < r0_values.size(); ++i) {
        SweepPoint point;
        point.r0 = r0_values[i];
        try {
            BiasConfig local = config;
            local.r0 = r0_values[i];
            BiasReport report = bias_experiment(local, derive_seed(seed, i), threads);
            point.kurtosis = report.kurtosis;
            point.ok = true;
        } catch (const Error& e) {
            point.ok = false;
            point.error = e.what();
        }
        points.push_back(std::move(point));
    }
    return points;
}

} // namespace tmalab
