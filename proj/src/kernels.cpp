#include "tmalab/kernels.hpp"

#include <cmath>
#include <limits>

#include "tmalab/angles.hpp"
#include "tmalab/errors.hpp"
#include "tmalab/costs.hpp"
#include "tmalab/geometry.hpp"

namespace tmalab::kernels {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SeriesData SeriesData::from(const BearingSeries& series) {
    SeriesData s;
    const std::size_t n = series.size();
    s.ox.reserve(n);
    s.oy.reserve(n);
    s.meas_deg.reserve(n);
    s.dir_x.reserve(n);
    s.dir_y.reserve(n);
    s.t.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        s.ox.push_back(series.ownship_positions[k].x);
        s.oy.push_back(series.ownship_positions[k].y);
        double deg = series.measured_bearings[k];
        s.meas_deg.push_back(deg);
        s.dir_x.push_back(std::sin(deg * kDegToRad));
        s.dir_y.push_back(std::cos(deg * kDegToRad));
        s.t.push_back(series.times[k]);
    }
    return s;
}

void Workspace::ensure(std::size_t n) {
    if (px.size() < n) {
        px.resize(n);
        py.resize(n);
        d.resize(n);
    }
}

double equidistant_cost_scalar(const SeriesData& s, double ax, double ay, double vx, double vy,
                               Workspace& ws) {
    const std::size_t n = s.size();
    if (n < 3) {
        return kInf;
    }
    ws.ensure(n);
    for (std::size_t k = 0; k < n; ++k) {
        double den = s.dir_x[k] * vy - s.dir_y[k] * vx; // sin(bearing - course)
        if (std::abs(den) < kParallelEps) {
            return kInf;
        }
        double num = (ax - s.ox[k]) * vy - (ay - s.oy[k]) * vx;
        double tk = num / den;
        ws.px[k] = s.ox[k] + tk * s.dir_x[k];
        ws.py[k] = s.oy[k] + tk * s.dir_y[k];
    }
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double dk = std::hypot(ws.px[k + 1] - ws.px[k], ws.py[k + 1] - ws.py[k]);
        ws.d[k] = dk;
        total += dk;
    }
    double mean = total / static_cast<double>(n - 1);
    if (mean < kDistEps) {
        return kInf;
    }
    double cost = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        cost += std::abs((ws.d[k] - mean) / mean);
    }
    return cost;
}

double bearing_diff_cost_scalar(const SeriesData& s, double px0, double py0, double velx,
                                double vely) {
    const std::size_t n = s.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double dx = px0 + s.t[k] * velx - s.ox[k];
        double dy = py0 + s.t[k] * vely - s.oy[k];
        if (dx == 0.0 && dy == 0.0) {
            return kInf;
        }
        double pred = std::atan2(dx, dy) * kRadToDeg;
        double r = wrap180(s.meas_deg[k] - pred);
        acc += r * r;
    }
    return std::sqrt(acc);
}

namespace {

const CostKernels kScalarKernels{&equidistant_cost_scalar, &bearing_diff_cost_scalar, "scalar"};

#if defined(TMALAB_HAVE_AVX2)
const CostKernels kAvx2Kernels{&equidistant_cost_avx2, &bearing_diff_cost_avx2, "avx2"};

bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

} // namespace

Backend detect_backend() {
#if defined(TMALAB_HAVE_AVX2)
    if (cpu_has_avx2()) {
        return Backend::Avx2;
    }
#endif
    return Backend::Scalar;
}

bool backend_available(Backend backend) {
    switch (backend) {
    case Backend::Scalar:
        return true;
    case Backend::Avx2:
#if defined(TMALAB_HAVE_AVX2)
        return cpu_has_avx2();
#else
        return false;
#endif
    }
    return false;
}

const char* backend_name(Backend backend) {
    return backend == Backend::Avx2 ? "avx2" : "scalar";
}

Backend backend_from_name(const std::string& name) {
    if (name == "auto") {
        return detect_backend();
    }
    if (name == "scalar") {
        return Backend::Scalar;
    }
    if (name == "avx2") {
        return Backend::Avx2;
    }
    throw InvalidArgument("unknown kernel backend: " + name);
}

const CostKernels& get(Backend backend) {
    if (backend == Backend::Avx2) {
#if defined(TMALAB_HAVE_AVX2)
        if (cpu_has_avx2()) {
            return kAvx2Kernels;
        }
#endif
        throw InvalidArgument("avx2 kernels not available on this machine");
    }
    return kScalarKernels;
}

} // namespace tmalab::kernels
