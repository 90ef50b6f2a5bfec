#include "blab/simd/kernels.hpp"

#include <cmath>
#include <limits>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define BLAB_HAVE_AVX2 1
#endif

namespace blab::simd::avx2 {

#ifdef BLAB_HAVE_AVX2

bool compiled() { return true; }

namespace {

// pi/2 as three doubles; with FMA the first two reduction steps are exact
// enough that the residual stays within a couple of ulp for |theta| < 2^30.
constexpr double kPio2Hi = 1.5707963267948966;
constexpr double kPio2Mid = 6.123233995736766e-17;
constexpr double kPio2Lo = -1.4973849048591698e-33;
constexpr double kTwoOverPi = 0.6366197723675814;
constexpr double kReduceLimit = 1073741824.0;  // 2^30

// fdlibm __kernel_sin / __kernel_cos coefficients, valid on |r| <= pi/4
constexpr double S1 = -1.66666666666666324348e-01;
constexpr double S2 = 8.33333333332248946124e-03;
constexpr double S3 = -1.98412698298579493134e-04;
constexpr double S4 = 2.75573137070700676789e-06;
constexpr double S5 = -2.50507602534068634195e-08;
constexpr double S6 = 1.58969099521155010221e-10;
constexpr double C1 = 4.16666666666666019037e-02;
constexpr double C2 = -1.38888888888741095749e-03;
constexpr double C3 = 2.48015872894767294178e-05;
constexpr double C4 = -2.75573143513906633035e-07;
constexpr double C5 = 2.08757232129817482790e-09;
constexpr double C6 = -1.13596475577881948265e-11;

inline __m256d set1(double v) { return _mm256_set1_pd(v); }

struct SinCos {
    __m256d s, c;
};

// Returns a mask of lanes that were out of the reduction range; those lanes
// must be recomputed by the caller.
inline SinCos sincos_pd(__m256d x, int& bad_mask) {
    const __m256d absx = _mm256_andnot_pd(set1(-0.0), x);
    bad_mask = _mm256_movemask_pd(_mm256_cmp_pd(absx, set1(kReduceLimit), _CMP_NLT_UQ));

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, set1(kTwoOverPi)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, set1(kPio2Hi), x);
    r = _mm256_fnmadd_pd(n, set1(kPio2Mid), r);
    r = _mm256_fnmadd_pd(n, set1(kPio2Lo), r);

    const __m256d z = _mm256_mul_pd(r, r);

    // sin(r) = r + r^3 (S1 + z P(z))
    __m256d ps = _mm256_fmadd_pd(z, set1(S6), set1(S5));
    ps = _mm256_fmadd_pd(z, ps, set1(S4));
    ps = _mm256_fmadd_pd(z, ps, set1(S3));
    ps = _mm256_fmadd_pd(z, ps, set1(S2));
    const __m256d v = _mm256_mul_pd(z, r);
    const __m256d sinr = _mm256_fmadd_pd(v, _mm256_fmadd_pd(z, ps, set1(S1)), r);

    // cos(r) = w + ((1 - w) - z/2) + z^2 Q(z), w = 1 - z/2
    __m256d pc = _mm256_fmadd_pd(z, set1(C6), set1(C5));
    pc = _mm256_fmadd_pd(z, pc, set1(C4));
    pc = _mm256_fmadd_pd(z, pc, set1(C3));
    pc = _mm256_fmadd_pd(z, pc, set1(C2));
    pc = _mm256_fmadd_pd(z, pc, set1(C1));
    const __m256d hz = _mm256_mul_pd(z, set1(0.5));
    const __m256d w = _mm256_sub_pd(set1(1.0), hz);
    const __m256d corr = _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc,
                                         _mm256_sub_pd(_mm256_sub_pd(set1(1.0), w), hz));
    const __m256d cosr = _mm256_add_pd(w, corr);

    // quadrant q = n mod 4
    const __m256d q = _mm256_sub_pd(n, _mm256_mul_pd(set1(4.0), _mm256_floor_pd(_mm256_mul_pd(n, set1(0.25)))));
    const __m256d swap = _mm256_or_pd(_mm256_cmp_pd(q, set1(1.0), _CMP_EQ_OQ),
                                      _mm256_cmp_pd(q, set1(3.0), _CMP_EQ_OQ));
    const __m256d neg_s = _mm256_cmp_pd(q, set1(1.5), _CMP_GT_OQ);  // q in {2,3}
    const __m256d neg_c = _mm256_or_pd(_mm256_cmp_pd(q, set1(1.0), _CMP_EQ_OQ),
                                       _mm256_cmp_pd(q, set1(2.0), _CMP_EQ_OQ));
    __m256d s = _mm256_blendv_pd(sinr, cosr, swap);
    __m256d c = _mm256_blendv_pd(cosr, sinr, swap);
    s = _mm256_xor_pd(s, _mm256_and_pd(neg_s, set1(-0.0)));
    c = _mm256_xor_pd(c, _mm256_and_pd(neg_c, set1(-0.0)));
    return {s, c};
}

inline SinCos sincos_checked(const double* theta) {
    const __m256d x = _mm256_loadu_pd(theta);
    int bad = 0;
    SinCos sc = sincos_pd(x, bad);
    if (bad) {
        alignas(32) double s[4], c[4];
        _mm256_store_pd(s, sc.s);
        _mm256_store_pd(c, sc.c);
        for (int l = 0; l < 4; ++l) {
            if (bad & (1 << l)) {
                s[l] = std::sin(theta[l]);
                c[l] = std::cos(theta[l]);
            }
        }
        sc.s = _mm256_load_pd(s);
        sc.c = _mm256_load_pd(c);
    }
    return sc;
}

// split four interleaved complex numbers into real and imaginary vectors
inline void deinterleave(const cplx* p, __m256d& re, __m256d& im) {
    const double* d = reinterpret_cast<const double*>(p);
    const __m256d a = _mm256_loadu_pd(d);      // r0 i0 r1 i1
    const __m256d b = _mm256_loadu_pd(d + 4);  // r2 i2 r3 i3
    const __m256d lo = _mm256_permute2f128_pd(a, b, 0x20);  // r0 i0 r2 i2
    const __m256d hi = _mm256_permute2f128_pd(a, b, 0x31);  // r1 i1 r3 i3
    re = _mm256_unpacklo_pd(lo, hi);  // r0 r1 r2 r3
    im = _mm256_unpackhi_pd(lo, hi);  // i0 i1 i2 i3
}

inline void interleave_store(cplx* p, __m256d re, __m256d im) {
    double* d = reinterpret_cast<double*>(p);
    const __m256d lo = _mm256_unpacklo_pd(re, im);  // r0 i0 r2 i2
    const __m256d hi = _mm256_unpackhi_pd(re, im);  // r1 i1 r3 i3
    _mm256_storeu_pd(d, _mm256_permute2f128_pd(lo, hi, 0x20));
    _mm256_storeu_pd(d + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
}

inline void lane_combine(__m256d v, double* lanes) { _mm256_storeu_pd(lanes, v); }

// fdlibm log/exp kernels, used by the pair energy
constexpr double Lg1 = 6.666666666666735130e-01;
constexpr double Lg2 = 3.999999999940941908e-01;
constexpr double Lg3 = 2.857142874366239149e-01;
constexpr double Lg4 = 2.222219843214978396e-01;
constexpr double Lg5 = 1.818357216161805012e-01;
constexpr double Lg6 = 1.531383769920937332e-01;
constexpr double Lg7 = 1.479819860511658591e-01;
constexpr double Ln2Hi = 6.93147180369123816490e-01;
constexpr double Ln2Lo = 1.90821492927058770002e-10;
constexpr double InvLn2 = 1.44269504088896338700e+00;
constexpr double P1 = 1.66666666666666019037e-01;
constexpr double P2 = -2.77777777770155933842e-03;
constexpr double P3 = 6.61375632143793436117e-05;
constexpr double P4 = -1.65339022054652515390e-06;
constexpr double P5 = 4.13813679705723846039e-08;

// natural log for positive normal inputs
inline __m256d log_pd(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
    // biased exponent as a double via the 2^52 trick
    const __m256i ebits = _mm256_or_si256(_mm256_srli_epi64(bits, 52),
                                          _mm256_set1_epi64x(0x4330000000000000LL));
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(ebits), set1(4503599627370496.0 + 1023.0));
    const __m256d big = _mm256_cmp_pd(m, set1(1.4142135623730951), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, set1(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, set1(1.0)));

    const __m256d f = _mm256_sub_pd(m, set1(1.0));
    const __m256d s = _mm256_div_pd(f, _mm256_add_pd(set1(2.0), f));
    const __m256d z = _mm256_mul_pd(s, s);
    const __m256d w = _mm256_mul_pd(z, z);
    const __m256d t1 = _mm256_mul_pd(w, _mm256_fmadd_pd(w, _mm256_fmadd_pd(w, set1(Lg6), set1(Lg4)), set1(Lg2)));
    const __m256d t2 = _mm256_mul_pd(
        z, _mm256_fmadd_pd(w, _mm256_fmadd_pd(w, _mm256_fmadd_pd(w, set1(Lg7), set1(Lg5)), set1(Lg3)), set1(Lg1)));
    const __m256d R = _mm256_add_pd(t2, t1);
    const __m256d hfsq = _mm256_mul_pd(set1(0.5), _mm256_mul_pd(f, f));
    const __m256d inner = _mm256_fmadd_pd(s, _mm256_add_pd(hfsq, R), _mm256_mul_pd(e, set1(Ln2Lo)));
    return _mm256_fmsub_pd(e, set1(Ln2Hi), _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f));
}

// exp for arguments in roughly [-700, 700]
inline __m256d exp_pd(__m256d y) {
    const __m256d k = _mm256_round_pd(_mm256_mul_pd(y, set1(InvLn2)), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d hi = _mm256_fnmadd_pd(k, set1(Ln2Hi), y);
    const __m256d lo = _mm256_mul_pd(k, set1(Ln2Lo));
    const __m256d r = _mm256_sub_pd(hi, lo);
    const __m256d t = _mm256_mul_pd(r, r);
    __m256d p = _mm256_fmadd_pd(t, set1(P5), set1(P4));
    p = _mm256_fmadd_pd(t, p, set1(P3));
    p = _mm256_fmadd_pd(t, p, set1(P2));
    p = _mm256_fmadd_pd(t, p, set1(P1));
    const __m256d c = _mm256_fnmadd_pd(t, p, r);
    const __m256d rc = _mm256_div_pd(_mm256_mul_pd(r, c), _mm256_sub_pd(set1(2.0), c));
    const __m256d e = _mm256_sub_pd(set1(1.0), _mm256_sub_pd(_mm256_sub_pd(lo, rc), hi));
    const __m256i ki = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
    const __m256i scale = _mm256_slli_epi64(_mm256_add_epi64(ki, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(e, _mm256_castsi256_pd(scale));
}

}  // namespace

double weighted_norm_sq(std::span<const cplx> c, std::span<const double> w) {
    const std::size_t n = c.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d re, im;
        deinterleave(c.data() + j, re, im);
        const __m256d mag = _mm256_fmadd_pd(re, re, _mm256_mul_pd(im, im));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w.data() + j), mag, acc);
    }
    double lanes[4];
    lane_combine(acc, lanes);
    for (; j < n; ++j) {
        const double re = c[j].real(), im = c[j].imag();
        lanes[j & 3] = std::fma(w[j], std::fma(re, re, im * im), lanes[j & 3]);
    }
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void apply_phase(std::span<cplx> c, std::span<const double> phase, std::span<const double> amp) {
    const std::size_t n = c.size();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const SinCos sc = sincos_checked(phase.data() + j);
        const __m256d a = _mm256_loadu_pd(amp.data() + j);
        const __m256d cs = _mm256_mul_pd(sc.c, a);
        const __m256d sn = _mm256_mul_pd(sc.s, a);
        __m256d re, im;
        deinterleave(c.data() + j, re, im);
        const __m256d nre = _mm256_fmsub_pd(re, cs, _mm256_mul_pd(im, sn));
        const __m256d nim = _mm256_fmadd_pd(re, sn, _mm256_mul_pd(im, cs));
        interleave_store(c.data() + j, nre, nim);
    }
    if (j < n) scalar::apply_phase(c.subspan(j), phase.subspan(j), amp.subspan(j));
}

cplx oscillatory_sum(std::span<const double> phase, std::span<const cplx> amp) {
    const std::size_t n = phase.size();
    __m256d accr = _mm256_setzero_pd(), acci = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const SinCos sc = sincos_checked(phase.data() + j);
        __m256d re, im;
        deinterleave(amp.data() + j, re, im);
        accr = _mm256_add_pd(accr, _mm256_fmsub_pd(re, sc.c, _mm256_mul_pd(im, sc.s)));
        acci = _mm256_add_pd(acci, _mm256_fmadd_pd(re, sc.s, _mm256_mul_pd(im, sc.c)));
    }
    double ar[4], ai[4];
    lane_combine(accr, ar);
    lane_combine(acci, ai);
    for (; j < n; ++j) {
        const double cs = std::cos(phase[j]), sn = std::sin(phase[j]);
        const double re = amp[j].real(), im = amp[j].imag();
        ar[j & 3] += re * cs - im * sn;
        ai[j & 3] += re * sn + im * cs;
    }
    return {(ar[0] + ar[1]) + (ar[2] + ar[3]), (ai[0] + ai[1]) + (ai[2] + ai[3])};
}

double pair_energy(std::span<const double> x, std::span<const double> w, double alpha) {
    const std::size_t n = x.size();
    const __m256d va = set1(-alpha);
    const __m256d sign = set1(-0.0);
    const __m256d inf = set1(std::numeric_limits<double>::infinity());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d xi = set1(x[i]);
        __m256d acc = _mm256_setzero_pd();
        std::size_t j = i + 1;
        for (; j + 4 <= n; j += 4) {
            const __m256d d = _mm256_andnot_pd(sign, _mm256_sub_pd(xi, _mm256_loadu_pd(x.data() + j)));
            const __m256d zero = _mm256_cmp_pd(d, _mm256_setzero_pd(), _CMP_EQ_OQ);
            const __m256d safe = _mm256_blendv_pd(d, set1(1.0), zero);
            __m256d k = exp_pd(_mm256_mul_pd(va, log_pd(safe)));
            k = _mm256_blendv_pd(k, inf, zero);
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(w.data() + j), k, acc);
        }
        double lanes[4];
        lane_combine(acc, lanes);
        for (; j < n; ++j) {
            const double d = std::abs(x[i] - x[j]);
            const double k = d == 0.0 ? std::numeric_limits<double>::infinity() : std::exp(-alpha * std::log(d));
            lanes[(j - i - 1) & 3] += w[j] * k;
        }
        total += w[i] * ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3]));
    }
    return 2.0 * total;
}

void sincos_array(std::span<const double> theta, std::span<double> s, std::span<double> c) {
    const std::size_t n = theta.size();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const SinCos sc = sincos_checked(theta.data() + j);
        _mm256_storeu_pd(s.data() + j, sc.s);
        _mm256_storeu_pd(c.data() + j, sc.c);
    }
    for (; j < n; ++j) {
        s[j] = std::sin(theta[j]);
        c[j] = std::cos(theta[j]);
    }
}

#else

bool compiled() { return false; }
double weighted_norm_sq(std::span<const cplx> c, std::span<const double> w) { return scalar::weighted_norm_sq(c, w); }
void apply_phase(std::span<cplx> c, std::span<const double> p, std::span<const double> a) { scalar::apply_phase(c, p, a); }
cplx oscillatory_sum(std::span<const double> p, std::span<const cplx> a) { return scalar::oscillatory_sum(p, a); }
double pair_energy(std::span<const double> x, std::span<const double> w, double alpha) {
    return scalar::pair_energy(x, w, alpha);
}
void sincos_array(std::span<const double> t, std::span<double> s, std::span<double> c) { scalar::sincos_array(t, s, c); }

#endif

}  // namespace blab::simd::avx2
