#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tmalab/scenario.hpp"

namespace tmalab::kernels {

/// Per-series inputs shared by every grid cell, laid out as flat arrays so the
/// inner loops stream over contiguous doubles.
struct SeriesData {
    std::vector<double> ox, oy;         // ownship position at each sample
    std::vector<double> meas_deg;       // measured bearings, degrees in [0, 360)
    std::vector<double> dir_x, dir_y;   // sin/cos of the measured bearings
    std::vector<double> t;              // sample times, seconds

    std::size_t size() const { return meas_deg.size(); }
    static SeriesData from(const BearingSeries& series);
};

/// Scratch buffers one worker thread reuses across grid cells.
struct Workspace {
    std::vector<double> px, py, d;
    void ensure(std::size_t n);
};

/// Equidistant-segments cost of one candidate track line, anchored at (ax, ay)
/// with unit direction (vx, vy). Returns +inf for candidates with a
/// near-parallel bearing line or a collapsed mean segment length.
using EquidistantFn = double (*)(const SeriesData&, double ax, double ay, double vx, double vy,
                                 Workspace&);

/// Bearing-difference cost of one candidate with initial position (px0, py0)
/// and velocity (velx, vely). Returns +inf when the candidate passes exactly
/// through an ownship sample position.
using BearingDiffFn = double (*)(const SeriesData&, double px0, double py0, double velx,
                                 double vely);

struct CostKernels {
    EquidistantFn equidistant = nullptr;
    BearingDiffFn bearing_diff = nullptr;
    const char* name = "";
};

enum class Backend { Scalar, Avx2 };

/// Best backend the running CPU supports.
Backend detect_backend();
bool backend_available(Backend backend);
const char* backend_name(Backend backend);
Backend backend_from_name(const std::string& name); // "scalar" | "avx2" | "auto"

/// Kernel table for a backend. Throws InvalidArgument if it is not available.
const CostKernels& get(Backend backend);

// Reference implementations (always available; the equivalence baseline).
double equidistant_cost_scalar(const SeriesData& s, double ax, double ay, double vx, double vy,
                               Workspace& ws);
double bearing_diff_cost_scalar(const SeriesData& s, double px0, double py0, double velx,
                                double vely);

#if defined(TMALAB_HAVE_AVX2)
double equidistant_cost_avx2(const SeriesData& s, double ax, double ay, double vx, double vy,
                             Workspace& ws);
double bearing_diff_cost_avx2(const SeriesData& s, double px0, double py0, double velx,
                              double vely);
#endif

} // namespace tmalab::kernels
