#include "blab/simd/kernels.hpp"

#include <cmath>
#include <limits>

// Reference kernels. Accumulation is split over four partial sums indexed by
// j % 4 and combined as (s0 + s1) + (s2 + s3), the same order the vector code
// uses, so the two paths differ only through sin/cos/log/exp.

namespace blab::simd::scalar {

double weighted_norm_sq(std::span<const cplx> c, std::span<const double> w) {
    double acc[4] = {0, 0, 0, 0};
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double re = c[j].real(), im = c[j].imag();
        acc[j & 3] = std::fma(w[j], std::fma(re, re, im * im), acc[j & 3]);
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void apply_phase(std::span<cplx> c, std::span<const double> phase, std::span<const double> amp) {
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double cs = std::cos(phase[j]) * amp[j];
        const double sn = std::sin(phase[j]) * amp[j];
        const double re = c[j].real(), im = c[j].imag();
        c[j] = cplx(re * cs - im * sn, re * sn + im * cs);
    }
}

cplx oscillatory_sum(std::span<const double> phase, std::span<const cplx> amp) {
    double ar[4] = {0, 0, 0, 0}, ai[4] = {0, 0, 0, 0};
    for (std::size_t j = 0; j < phase.size(); ++j) {
        const double cs = std::cos(phase[j]), sn = std::sin(phase[j]);
        const double re = amp[j].real(), im = amp[j].imag();
        ar[j & 3] += re * cs - im * sn;
        ai[j & 3] += re * sn + im * cs;
    }
    return {(ar[0] + ar[1]) + (ar[2] + ar[3]), (ai[0] + ai[1]) + (ai[2] + ai[3])};
}

double pair_energy(std::span<const double> x, std::span<const double> w, double alpha) {
    const std::size_t n = x.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // pairs (i, j) with j > i, counted twice at the end
        double acc[4] = {0, 0, 0, 0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::abs(x[i] - x[j]);
            const double k = d == 0.0 ? std::numeric_limits<double>::infinity()
                                      : std::exp(-alpha * std::log(d));
            acc[(j - i - 1) & 3] += w[j] * k;
        }
        total += w[i] * ((acc[0] + acc[1]) + (acc[2] + acc[3]));
    }
    return 2.0 * total;
}

void sincos_array(std::span<const double> theta, std::span<double> s, std::span<double> c) {
    for (std::size_t j = 0; j < theta.size(); ++j) {
        s[j] = std::sin(theta[j]);
        c[j] = std::cos(theta[j]);
    }
}

}  // namespace blab::simd::scalar
