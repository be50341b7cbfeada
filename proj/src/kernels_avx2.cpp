// AVX2 + FMA variants of the cost kernels. Built only on x86_64 and selected
// at runtime after a CPUID check; kernels.cpp holds the scalar references.

#include "tmalab/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "tmalab/angles.hpp"
#include "tmalab/costs.hpp"
#include "tmalab/geometry.hpp"

namespace tmalab::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

inline double hsum_pd(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d odd = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, odd));
}

// Rational minimax arctangent (Cephes coefficients), ~1 ulp over [0, inf].
// Input lanes must be non-negative; NaN lanes propagate.
inline __m256d atan_nonneg_pd(__m256d x) {
    const __m256d kOne = _mm256_set1_pd(1.0);
    const __m256d kTan3Pi8 = _mm256_set1_pd(2.41421356237309504880);
    const __m256d kMid = _mm256_set1_pd(0.66);
    const __m256d kPiO2 = _mm256_set1_pd(1.57079632679489661923);
    const __m256d kPiO4 = _mm256_set1_pd(0.78539816339744830962);
    const __m256d kMoreBits = _mm256_set1_pd(6.123233995736765886130e-17);
    const __m256d kHalfMoreBits = _mm256_set1_pd(0.5 * 6.123233995736765886130e-17);

    __m256d m_hi = _mm256_cmp_pd(x, kTan3Pi8, _CMP_GT_OQ);
    __m256d m_mid = _mm256_andnot_pd(m_hi, _mm256_cmp_pd(x, kMid, _CMP_GT_OQ));

    __m256d x_hi = _mm256_div_pd(_mm256_set1_pd(-1.0), x);
    __m256d x_mid = _mm256_div_pd(_mm256_sub_pd(x, kOne), _mm256_add_pd(x, kOne));
    __m256d xr = _mm256_blendv_pd(x, x_mid, m_mid);
    xr = _mm256_blendv_pd(xr, x_hi, m_hi);

    __m256d z = _mm256_mul_pd(xr, xr);
    __m256d p = _mm256_set1_pd(-8.750608600031904122785e-1);
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-1.615753718733365076637e1));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-7.500855792314704667340e1));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-1.228866684490136173410e2));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-6.485021904942025371773e1));
    __m256d q = _mm256_add_pd(z, _mm256_set1_pd(2.485846490142306297962e1));
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(1.650270098316988542046e2));
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(4.328810604912902668951e2));
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(4.853903996359136964868e2));
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(1.945506571482613964425e2));

    __m256d zz = _mm256_div_pd(_mm256_mul_pd(z, p), q);
    zz = _mm256_fmadd_pd(xr, zz, xr);
    zz = _mm256_add_pd(zz, _mm256_and_pd(m_mid, kHalfMoreBits));
    zz = _mm256_add_pd(zz, _mm256_and_pd(m_hi, kMoreBits));

    __m256d base = _mm256_and_pd(m_mid, kPiO4);
    base = _mm256_blendv_pd(base, kPiO2, m_hi);
    return _mm256_add_pd(base, zz);
}

// Four-quadrant arctangent matching std::atan2(y, x) up to ~1 ulp.
// (0, 0) lanes produce NaN; callers flag those separately.
inline __m256d atan2_pd(__m256d y, __m256d x) {
    const __m256d kPiV = _mm256_set1_pd(3.14159265358979323846);
    __m256d q = atan_nonneg_pd(_mm256_div_pd(abs_pd(y), abs_pd(x)));
    __m256d m_xneg = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LT_OQ);
    q = _mm256_blendv_pd(q, _mm256_sub_pd(kPiV, q), m_xneg);
    __m256d sign_y = _mm256_and_pd(y, _mm256_set1_pd(-0.0));
    return _mm256_or_pd(q, sign_y); // q >= 0, so or applies copysign
}

} // namespace

double bearing_diff_cost_avx2(const SeriesData& s, double px0, double py0, double velx,
                              double vely) {
    const std::size_t n = s.size();
    const __m256d vpx0 = _mm256_set1_pd(px0);
    const __m256d vpy0 = _mm256_set1_pd(py0);
    const __m256d vvx = _mm256_set1_pd(velx);
    const __m256d vvy = _mm256_set1_pd(vely);
    const __m256d kRad2Deg = _mm256_set1_pd(kRadToDeg);
    const __m256d kInv360 = _mm256_set1_pd(1.0 / 360.0);
    const __m256d k360 = _mm256_set1_pd(360.0);
    const __m256d zero = _mm256_setzero_pd();

    __m256d acc = zero;
    __m256d degen = zero;
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d t = _mm256_loadu_pd(&s.t[k]);
        __m256d dx = _mm256_sub_pd(_mm256_fmadd_pd(t, vvx, vpx0), _mm256_loadu_pd(&s.ox[k]));
        __m256d dy = _mm256_sub_pd(_mm256_fmadd_pd(t, vvy, vpy0), _mm256_loadu_pd(&s.oy[k]));
        degen = _mm256_or_pd(degen, _mm256_and_pd(_mm256_cmp_pd(dx, zero, _CMP_EQ_OQ),
                                                  _mm256_cmp_pd(dy, zero, _CMP_EQ_OQ)));
        __m256d pred = _mm256_mul_pd(atan2_pd(dx, dy), kRad2Deg);
        __m256d r = _mm256_sub_pd(_mm256_loadu_pd(&s.meas_deg[k]), pred);
        __m256d turns = _mm256_round_pd(_mm256_mul_pd(r, kInv360),
                                        _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
        r = _mm256_fnmadd_pd(turns, k360, r);
        acc = _mm256_fmadd_pd(r, r, acc);
    }
    if (_mm256_movemask_pd(degen) != 0) {
        return kInf;
    }
    double total = hsum_pd(acc);
    for (; k < n; ++k) {
        double dx = px0 + s.t[k] * velx - s.ox[k];
        double dy = py0 + s.t[k] * vely - s.oy[k];
        if (dx == 0.0 && dy == 0.0) {
            return kInf;
        }
        double r = wrap180(s.meas_deg[k] - std::atan2(dx, dy) * kRadToDeg);
        total += r * r;
    }
    return std::sqrt(total);
}

double equidistant_cost_avx2(const SeriesData& s, double ax, double ay, double vx, double vy,
                             Workspace& ws) {
    const std::size_t n = s.size();
    if (n < 3) {
        return kInf;
    }
    ws.ensure(n);
    const __m256d vvx = _mm256_set1_pd(vx);
    const __m256d vvy = _mm256_set1_pd(vy);
    const __m256d vax = _mm256_set1_pd(ax);
    const __m256d vay = _mm256_set1_pd(ay);
    const __m256d eps = _mm256_set1_pd(kParallelEps);

    __m256d bad = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d ux = _mm256_loadu_pd(&s.dir_x[k]);
        __m256d uy = _mm256_loadu_pd(&s.dir_y[k]);
        __m256d ox = _mm256_loadu_pd(&s.ox[k]);
        __m256d oy = _mm256_loadu_pd(&s.oy[k]);
        __m256d den = _mm256_fmsub_pd(ux, vvy, _mm256_mul_pd(uy, vvx));
        bad = _mm256_or_pd(bad, _mm256_cmp_pd(abs_pd(den), eps, _CMP_LT_OQ));
        __m256d num = _mm256_fmsub_pd(_mm256_sub_pd(vax, ox), vvy,
                                      _mm256_mul_pd(_mm256_sub_pd(vay, oy), vvx));
        __m256d tk = _mm256_div_pd(num, den);
        _mm256_storeu_pd(&ws.px[k], _mm256_fmadd_pd(tk, ux, ox));
        _mm256_storeu_pd(&ws.py[k], _mm256_fmadd_pd(tk, uy, oy));
    }
    if (_mm256_movemask_pd(bad) != 0) {
        return kInf;
    }
    for (; k < n; ++k) {
        double den = s.dir_x[k] * vy - s.dir_y[k] * vx;
        if (std::abs(den) < kParallelEps) {
            return kInf;
        }
        double num = (ax - s.ox[k]) * vy - (ay - s.oy[k]) * vx;
        double tk = num / den;
        ws.px[k] = s.ox[k] + tk * s.dir_x[k];
        ws.py[k] = s.oy[k] + tk * s.dir_y[k];
    }

    const std::size_t m = n - 1; // segment count
    __m256d tot = _mm256_setzero_pd();
    k = 0;
    for (; k + 4 <= m; k += 4) {
        __m256d ddx = _mm256_sub_pd(_mm256_loadu_pd(&ws.px[k + 1]), _mm256_loadu_pd(&ws.px[k]));
        __m256d ddy = _mm256_sub_pd(_mm256_loadu_pd(&ws.py[k + 1]), _mm256_loadu_pd(&ws.py[k]));
        __m256d dk = _mm256_sqrt_pd(_mm256_fmadd_pd(ddx, ddx, _mm256_mul_pd(ddy, ddy)));
        _mm256_storeu_pd(&ws.d[k], dk);
        tot = _mm256_add_pd(tot, dk);
    }
    double total = hsum_pd(tot);
    for (; k < m; ++k) {
        double ddx = ws.px[k + 1] - ws.px[k];
        double ddy = ws.py[k + 1] - ws.py[k];
        double dk = std::sqrt(ddx * ddx + ddy * ddy);
        ws.d[k] = dk;
        total += dk;
    }
    double mean = total / static_cast<double>(m);
    if (mean < kDistEps) {
        return kInf;
    }

    const __m256d vmean = _mm256_set1_pd(mean);
    __m256d cacc = _mm256_setzero_pd();
    k = 0;
    for (; k + 4 <= m; k += 4) {
        __m256d dev = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(&ws.d[k]), vmean));
        cacc = _mm256_add_pd(cacc, _mm256_div_pd(dev, vmean));
    }
    double cost = hsum_pd(cacc);
    for (; k < m; ++k) {
        cost += std::abs((ws.d[k] - mean) / mean);
    }
    return cost;
}

} // namespace tmalab::kernels
