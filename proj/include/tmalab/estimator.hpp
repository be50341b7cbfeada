#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tmalab/costs.hpp"
#include "tmalab/kernels.hpp"

namespace tmalab {

/// One search-grid axis: values lo + i*step for every i with
/// lo + i*step <= hi + step/2.
struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;

    std::size_t size() const;
    double value(std::size_t i) const { return lo + static_cast<double>(i) * step; }
};

struct SearchSpace {
    GridAxis r0;     // meters
    GridAxis course; // degrees
    GridAxis speed;  // m/s; ignored by the equidistant path

    /// Search ranges centered on the true parameters:
    /// r0 +- 1000 m step 10, course +- 2 deg step 0.1, speed 1..20 step 0.1.
    static SearchSpace centered_on(const TargetParams& truth);
};

enum class CostKind { BearingDiff, Equidistant };

/// Which bearing anchors the candidate's initial position: the scenario's true
/// initial bearing or the first (noisy) measurement.
enum class AnchorMode { TrueB0, MeasuredB0 };

struct SearchOptions {
    AnchorMode anchor = AnchorMode::TrueB0;
    std::optional<kernels::Backend> backend; // default: best detected
    int threads = 0;                         // 0 = hardware concurrency
};

struct EstimationResult {
    TargetParams best;
    double cost = 0.0;
    std::array<double, 3> param_error{}; // (est - true): meters, degrees, m/s
    double rms_error = 0.0;              // meters
    std::uint64_t cells_evaluated = 0;
};

struct RunOutcome {
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    EstimationResult result;
};

struct MonteCarloSummary {
    int runs = 0;
    int failed_runs = 0;
    std::array<double, 3> mean_abs_param_error{}; // means of |error| over ok runs
    double mean_rms_error = 0.0;
    std::vector<RunOutcome> per_run;
};

/// (est - true) with the course difference wrapped to (-180, 180].
std::array<double, 3> param_error(const TargetParams& truth, const TargetParams& est);

/// RMS distance between the true trajectory and the trajectory rebuilt from
/// est, both anchored on the scenario's true initial bearing.
double rms_trajectory_error(const Scenario& scenario, const TargetParams& est);

/// Exhaustive minimum over the search grid. BearingDiff scans
/// r0 x course x speed; Equidistant scans r0 x course and derives the speed of
/// the winning cell from its segment statistics. Equal-cost cells resolve to
/// the lexicographically smallest (r0, course, speed), independent of thread
/// schedule. Throws EmptySearchSpace / NoFeasibleCandidate.
EstimationResult grid_search(const Scenario& scenario, const BearingSeries& series,
                             const SearchSpace& space, CostKind kind,
                             const SearchOptions& opts = {});

/// Repeats generate_bearings + grid_search with per-run seeds derived from
/// base_seed and averages absolute parameter errors and RMS errors over the
/// successful runs. Failed runs are recorded, counted and excluded.
MonteCarloSummary monte_carlo(const Scenario& scenario, const SearchSpace& space, CostKind kind,
                              int runs, std::uint64_t base_seed, const SearchOptions& opts = {});

const char* cost_kind_name(CostKind kind);

} // namespace tmalab
