#include "tmalab/estimator.hpp"

#include <cmath>
#include <limits>

#include "tmalab/parallel.hpp"
#include "tmalab/rng.hpp"

namespace tmalab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

struct BestCell {
    double cost = kInf;
    std::uint64_t idx = std::numeric_limits<std::uint64_t>::max();

    // Total order on (cost, idx) pairs keeps the argmin reduction associative,
    // so sequential and any parallel schedule pick the same winner.
    void offer(double cost_, std::uint64_t idx_) {
        if (cost_ < cost || (cost_ == cost && idx_ < idx)) {
            cost = cost_;
            idx = idx_;
        }
    }
};
} // namespace

std::size_t GridAxis::size() const {
    if (!(step > 0.0)) {
        throw InvalidArgument("grid axis step must be > 0");
    }
    if (hi < lo) {
        return 0;
    }
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
}

SearchSpace SearchSpace::centered_on(const TargetParams& truth) {
    SearchSpace space;
    space.r0 = {truth.r0 - 1000.0, truth.r0 + 1000.0, 10.0};
    space.course = {truth.course.value - 2.0, truth.course.value + 2.0, 0.1};
    space.speed = {1.0, 20.0, 0.1};
    return space;
}

std::array<double, 3> param_error(const TargetParams& truth, const TargetParams& est) {
    return {est.r0 - truth.r0, wrap180(est.course.value - truth.course.value),
            est.speed - truth.speed};
}

double rms_trajectory_error(const Scenario& scenario, const TargetParams& est) {
    scenario.validate();
    Position est0 = initial_target_position(scenario.ownship_start, scenario.b0, est.r0);
    double acc = 0.0;
    for (int k = 0; k < scenario.n; ++k) {
        double t = static_cast<double>(k) * scenario.ts;
        Position truth = target_position_at(scenario, t);
        Position guess = propagate(est0, est.course, est.speed, t);
        double dx = truth.x - guess.x;
        double dy = truth.y - guess.y;
        acc += dx * dx + dy * dy;
    }
    return std::sqrt(acc / static_cast<double>(scenario.n));
}

EstimationResult grid_search(const Scenario& scenario, const BearingSeries& series,
                             const SearchSpace& space, CostKind kind,
                             const SearchOptions& opts) {
    scenario.validate();
    if (series.size() != static_cast<std::size_t>(scenario.n)) {
        throw ShapeError("grid_search: series length does not match the scenario");
    }

    const std::size_t nr = space.r0.size();
    const std::size_t nc = space.course.size();
    const std::size_t nspeed = space.speed.size();
    if (nr == 0 || nc == 0 || nspeed == 0) {
        throw EmptySearchSpace("grid_search: empty parameter grid");
    }
    // The equidistant path never scans the speed axis; it only clamps into it.
    const std::size_t ns = kind == CostKind::BearingDiff ? nspeed : 1;

    const kernels::Backend backend = opts.backend.value_or(kernels::detect_backend());
    const kernels::CostKernels& kern = kernels::get(backend);
    const kernels::SeriesData data = kernels::SeriesData::from(series);

    const double anchor_deg = opts.anchor == AnchorMode::TrueB0 ? scenario.b0.value
                                                                : series.measured_bearings.front();
    const Position anchor_dir = compass_dir(anchor_deg);

    std::vector<double> ax(nr), ay(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        double r0 = space.r0.value(i);
        ax[i] = scenario.ownship_start.x + r0 * anchor_dir.x;
        ay[i] = scenario.ownship_start.y + r0 * anchor_dir.y;
    }
    std::vector<double> course_sin(nc), course_cos(nc);
    for (std::size_t j = 0; j < nc; ++j) {
        Position d = compass_dir(space.course.value(j));
        course_sin[j] = d.x;
        course_cos[j] = d.y;
    }
    std::vector<double> speeds(ns);
    if (kind == CostKind::BearingDiff) {
        for (std::size_t k = 0; k < ns; ++k) {
            speeds[k] = space.speed.value(k);
        }
    }

    const std::size_t pair_count = nr * nc;
    const unsigned workers = resolve_threads(opts.threads);
    std::vector<BestCell> chunk_best(std::max<std::size_t>(workers, 1));

    parallel_chunks(pair_count, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
        kernels::Workspace ws;
        BestCell best;
        for (std::size_t pair = begin; pair < end; ++pair) {
            const std::size_t i = pair / nc;
            const std::size_t j = pair % nc;
            if (kind == CostKind::Equidistant) {
                double cost = kern.equidistant(data, ax[i], ay[i], course_sin[j], course_cos[j], ws);
                best.offer(cost, pair);
            } else {
                for (std::size_t k = 0; k < ns; ++k) {
                    double cost = kern.bearing_diff(data, ax[i], ay[i],
                                                    speeds[k] * course_sin[j],
                                                    speeds[k] * course_cos[j]);
                    best.offer(cost, pair * ns + k);
                }
            }
        }
        chunk_best[w] = best;
    });

    BestCell best;
    for (const BestCell& b : chunk_best) {
        best.offer(b.cost, b.idx);
    }
    if (!(best.cost < kInf)) {
        throw NoFeasibleCandidate("grid_search: every grid cell evaluated to an infinite cost");
    }

    const std::size_t k = best.idx % ns;
    const std::size_t j = (best.idx / ns) % nc;
    const std::size_t i = best.idx / (ns * nc);

    EstimationResult result;
    result.cost = best.cost;
    result.cells_evaluated = pair_count * ns;
    result.best.r0 = space.r0.value(i);
    result.best.course = CourseDeg(space.course.value(j));
    if (kind == CostKind::BearingDiff) {
        result.best.speed = speeds[k];
    } else {
        CandidateTrack winner{space.r0.value(i), CourseDeg(space.course.value(j))};
        SegmentStats stats =
            segment_stats(series, winner, scenario.ownship_start, BearingDeg(anchor_deg));
        // Clamp into the search bounds: on badly conditioned geometries the
        // segment statistics can imply speeds far outside the searched box.
        double speed = derive_speed(stats, scenario.ts);
        result.best.speed = std::min(std::max(speed, space.speed.lo), space.speed.hi);
    }
    result.param_error = param_error(scenario.target, result.best);
    result.rms_error = rms_trajectory_error(scenario, result.best);
    return result;
}

MonteCarloSummary monte_carlo(const Scenario& scenario, const SearchSpace& space, CostKind kind,
                              int runs, std::uint64_t base_seed, const SearchOptions& opts) {
    if (runs < 1) {
        throw InvalidArgument("monte_carlo: need at least one run");
    }
    MonteCarloSummary summary;
    summary.runs = runs;
    summary.per_run.reserve(runs);

    std::array<double, 3> err_acc{};
    double rms_acc = 0.0;
    int ok_count = 0;
    for (int run = 0; run < runs; ++run) {
        RunOutcome out;
        out.seed = derive_seed(base_seed, static_cast<std::uint64_t>(run));
        try {
            BearingSeries series = generate_bearings(scenario, out.seed);
            out.result = grid_search(scenario, series, space, kind, opts);
            out.ok = true;
        } catch (const Error& e) {
            out.ok = false;
            out.error = e.what();
        }
        if (out.ok) {
            for (int c = 0; c < 3; ++c) {
                err_acc[c] += std::abs(out.result.param_error[c]);
            }
            rms_acc += out.result.rms_error;
            ++ok_count;
        }
        summary.per_run.push_back(std::move(out));
    }
    summary.failed_runs = runs - ok_count;
    if (ok_count > 0) {
        for (int c = 0; c < 3; ++c) {
            summary.mean_abs_param_error[c] = err_acc[c] / ok_count;
        }
        summary.mean_rms_error = rms_acc / ok_count;
    } else {
        summary.mean_abs_param_error = {std::nan(""), std::nan(""), std::nan("")};
        summary.mean_rms_error = std::nan("");
    }
    return summary;
}

const char* cost_kind_name(CostKind kind) {
    return kind == CostKind::BearingDiff ? "bearing-diff" : "equidistant";
}

} // namespace tmalab
