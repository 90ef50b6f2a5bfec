#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

// Inner loops shared by the propagator, quadrature and measure code.
// Every kernel has a scalar reference and an AVX2+FMA variant; the variant is
// picked once at startup from cpuid and can be pinned for testing.

namespace blab::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

Isa active_isa();
Isa detected_isa();
// Pin the dispatch target. Requests for an ISA the CPU lacks fall back to scalar.
void force_isa(Isa isa);
void reset_isa();
std::string_view isa_name(Isa isa);

// sum_j w_j |c_j|^2
double weighted_norm_sq(std::span<const cplx> c, std::span<const double> w);

// c_j <- c_j * amp_j * exp(i phase_j)
void apply_phase(std::span<cplx> c, std::span<const double> phase, std::span<const double> amp);

// sum_j a_j exp(i phase_j)
cplx oscillatory_sum(std::span<const double> phase, std::span<const cplx> amp);

// sum over i != j of w_i w_j |x_i - x_j|^(-alpha); coincident atoms give +inf
double pair_energy(std::span<const double> x, std::span<const double> w, double alpha);

// sincos over an array, exposed for tests and for callers that reuse the values
void sincos_array(std::span<const double> theta, std::span<double> s, std::span<double> c);

namespace scalar {
double weighted_norm_sq(std::span<const cplx> c, std::span<const double> w);
void apply_phase(std::span<cplx> c, std::span<const double> phase, std::span<const double> amp);
cplx oscillatory_sum(std::span<const double> phase, std::span<const cplx> amp);
double pair_energy(std::span<const double> x, std::span<const double> w, double alpha);
void sincos_array(std::span<const double> theta, std::span<double> s, std::span<double> c);
}  // namespace scalar

namespace avx2 {
bool compiled();
double weighted_norm_sq(std::span<const cplx> c, std::span<const double> w);
void apply_phase(std::span<cplx> c, std::span<const double> phase, std::span<const double> amp);
cplx oscillatory_sum(std::span<const double> phase, std::span<const cplx> amp);
double pair_energy(std::span<const double> x, std::span<const double> w, double alpha);
void sincos_array(std::span<const double> theta, std::span<double> s, std::span<double> c);
}  // namespace avx2

}  // namespace blab::simd
