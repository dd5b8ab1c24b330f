// AVX2/FMA variants of the kernels in kernels_scalar.cpp. This translation
// unit is compiled with -mavx2 -mfma and must only be reached through the
// runtime check in dispatch.cpp.

#include "rotwave/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <limits>

namespace rotwave::simd {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot3_avx2(const double* a, const double* b, const double* c, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(ab, _mm256_loadu_pd(c + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

// Natural log of positive normal doubles (fdlibm reduction and minimax
// polynomial in s = f/(2+f); < 1 ulp on the reduced range).
inline __m256d log_pd(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    __m256i e = _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(1023));
    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

    const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    e = _mm256_add_epi64(e, _mm256_and_si256(_mm256_castpd_si256(big), _mm256_set1_epi64x(1)));

    // int64 -> double for |e| < 2^31
    const __m128i e32 = _mm256_castsi256_si128(
        _mm256_permutevar8x32_epi32(e, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0)));
    const __m256d k = _mm256_cvtepi32_pd(e32);

    const __m256d f = _mm256_sub_pd(m, _mm256_set1_pd(1.0));
    const __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
    const __m256d z = _mm256_mul_pd(s, s);
    __m256d r = _mm256_set1_pd(1.479819860511658591e-01);
    r = _mm256_fmadd_pd(r, z, _mm256_set1_pd(1.531383769920937332e-01));
    r = _mm256_fmadd_pd(r, z, _mm256_set1_pd(1.818357216161805012e-01));
    r = _mm256_fmadd_pd(r, z, _mm256_set1_pd(2.222219843214978396e-01));
    r = _mm256_fmadd_pd(r, z, _mm256_set1_pd(2.857142874366239149e-01));
    r = _mm256_fmadd_pd(r, z, _mm256_set1_pd(3.999999999940941908e-01));
    r = _mm256_fmadd_pd(r, z, _mm256_set1_pd(6.666666666666735130e-01));
    r = _mm256_mul_pd(r, z);

    const __m256d hfsq = _mm256_mul_pd(_mm256_set1_pd(0.5), _mm256_mul_pd(f, f));
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    // k*ln2_hi - ((hfsq - (s*(hfsq+R) + k*ln2_lo)) - f)
    const __m256d t = _mm256_fmadd_pd(s, _mm256_add_pd(hfsq, r), _mm256_mul_pd(k, ln2_lo));
    return _mm256_sub_pd(_mm256_mul_pd(k, ln2_hi), _mm256_sub_pd(_mm256_sub_pd(hfsq, t), f));
}

// exp for arguments in [-700, 700]; smaller arguments flush to zero.
inline __m256d exp_pd(__m256d x) {
    const __m256d lo_mask = _mm256_cmp_pd(x, _mm256_set1_pd(-700.0), _CMP_LT_OQ);
    x = _mm256_max_pd(x, _mm256_set1_pd(-700.0));
    x = _mm256_min_pd(x, _mm256_set1_pd(700.0));

    const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(6.93145751953125e-1), x);
    r = _mm256_fnmadd_pd(k, _mm256_set1_pd(1.42860682030941723212e-6), r);

    // Taylor polynomial to degree 13 on |r| <= ln2/2.
    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    // 2^k via the exponent field; k in [-1010, 1010] keeps the biased value valid
    const __m128i k32 = _mm256_cvtpd_epi32(k);
    const __m256i k64 = _mm256_cvtepi32_epi64(k32);
    const __m256i biased = _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
    const __m256d scaled = _mm256_mul_pd(p, _mm256_castsi256_pd(biased));
    return _mm256_andnot_pd(lo_mask, scaled);
}

double power_terms_avx2(const double* u, const double* w, std::size_t n, double p,
                        double* grad, double* curv) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d tiny = _mm256_set1_pd(1e-300);
    const __m256d pm2 = _mm256_set1_pd(p - 2.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vu = _mm256_loadu_pd(u + i);
        const __m256d a = _mm256_andnot_pd(sign_mask, vu);
        const __m256d live = _mm256_cmp_pd(a, tiny, _CMP_GT_OQ);
        const __m256d safe = _mm256_blendv_pd(_mm256_set1_pd(1.0), a, live);
        const __m256d s = _mm256_and_pd(live, exp_pd(_mm256_mul_pd(pm2, log_pd(safe))));
        const __m256d ws = _mm256_mul_pd(_mm256_loadu_pd(w + i), s);
        const __m256d g = _mm256_mul_pd(ws, vu);
        _mm256_storeu_pd(grad + i, g);
        if (curv) _mm256_storeu_pd(curv + i, ws);
        acc = _mm256_fmadd_pd(g, vu, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        const double a = std::abs(u[i]);
        const double s = a > 1e-300 ? std::pow(a, p - 2.0) : 0.0;
        const double ws = w[i] * s;
        grad[i] = ws * u[i];
        if (curv) curv[i] = ws;
        total += ws * u[i] * u[i];
    }
    return total;
}

GapMinima gap_reduce_avx2(const double* j, const double* shift, std::size_t n,
                          double kernel_tol) {
    const double inf = std::numeric_limits<double>::infinity();
    const __m256d vinf = _mm256_set1_pd(inf);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d tol = _mm256_set1_pd(kernel_tol);
    __m256d best_ratio = vinf, best_abs = vinf;
    __m256d idx_ratio = _mm256_set1_pd(-1.0), idx_abs = _mm256_set1_pd(-1.0);
    __m256d lane = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d four = _mm256_set1_pd(4.0);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4, lane = _mm256_add_pd(lane, four)) {
        const __m256d vj = _mm256_loadu_pd(j + i);
        // no FMA here: the rounding must match the scalar scan bit for bit
        const __m256d lam =
            _mm256_andnot_pd(sign_mask, _mm256_sub_pd(_mm256_mul_pd(vj, vj), _mm256_loadu_pd(shift + i)));
        const __m256d kernel = _mm256_cmp_pd(lam, _mm256_mul_pd(tol, vj), _CMP_LE_OQ);
        const __m256d lam_k = _mm256_blendv_pd(lam, vinf, kernel);
        const __m256d ratio = _mm256_blendv_pd(_mm256_div_pd(lam, vj), vinf, kernel);
        const __m256d better_r = _mm256_cmp_pd(ratio, best_ratio, _CMP_LT_OQ);
        best_ratio = _mm256_blendv_pd(best_ratio, ratio, better_r);
        idx_ratio = _mm256_blendv_pd(idx_ratio, lane, better_r);
        const __m256d better_a = _mm256_cmp_pd(lam_k, best_abs, _CMP_LT_OQ);
        best_abs = _mm256_blendv_pd(best_abs, lam_k, better_a);
        idx_abs = _mm256_blendv_pd(idx_abs, lane, better_a);
    }

    // Lane merge: smallest value, earliest index among ties (matches the scalar scan).
    alignas(32) double br[4], ir[4], ba[4], ia[4];
    _mm256_store_pd(br, best_ratio);
    _mm256_store_pd(ir, idx_ratio);
    _mm256_store_pd(ba, best_abs);
    _mm256_store_pd(ia, idx_abs);
    GapMinima g;
    g.min_ratio = inf;
    g.min_abs = inf;
    for (int l = 0; l < 4; ++l) {
        if (ir[l] >= 0 && (br[l] < g.min_ratio ||
                           (br[l] == g.min_ratio && ir[l] < static_cast<double>(g.ratio_index)))) {
            g.min_ratio = br[l];
            g.ratio_index = static_cast<std::ptrdiff_t>(ir[l]);
        }
        if (ia[l] >= 0 && (ba[l] < g.min_abs ||
                           (ba[l] == g.min_abs && ia[l] < static_cast<double>(g.abs_index)))) {
            g.min_abs = ba[l];
            g.abs_index = static_cast<std::ptrdiff_t>(ia[l]);
        }
    }
    for (; i < n; ++i) {
        const double lam = std::abs(j[i] * j[i] - shift[i]);
        if (lam <= kernel_tol * j[i]) continue;
        const double ratio = lam / j[i];
        if (ratio < g.min_ratio) {
            g.min_ratio = ratio;
            g.ratio_index = static_cast<std::ptrdiff_t>(i);
        }
        if (lam < g.min_abs) {
            g.min_abs = lam;
            g.abs_index = static_cast<std::ptrdiff_t>(i);
        }
    }
    return g;
}

} // namespace

const KernelTable& avx2_kernel_table() noexcept {
    static const KernelTable table{"avx2",         dot_avx2,         dot3_avx2,
                                   axpy_avx2,      power_terms_avx2, gap_reduce_avx2};
    return table;
}

} // namespace rotwave::simd
