#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "blab/wavepacket/bump.hpp"

namespace blab {

using cplx = std::complex<double>;

enum class Precision { double_, extended };

// f_v(x) = exp(-i x / v^2) g_check(x / v), f_hat_v(xi) = v g(v xi + 1/v)
struct WavePacket {
    const BumpProfile* bump;
    double v;

    cplx value(double x) const;
    double fhat_modulus(double xi) const;
    // f_hat_v with the phase; the table gives g, the transform is real
    double fhat(double xi) const;
};

struct PacketOptions {
    Precision precision = Precision::double_;
    double rel_tol = 1e-10;
    // amplitude-weighted phase error allowed, in radians
    double phase_budget = 1e-6;
    std::size_t panel_budget = 2000000;
};

struct PacketValue {
    cplx value{0.0, 0.0};
    // quadrature, truncation and phase-rounding contributions
    double error = 0.0;
    double phase_error = 0.0;
    std::size_t panels = 0;
};

// B_t f_v(x) = (2 pi)^{-1} int exp(i F(xi)) g(xi) dxi. Throws PrecisionError
// (magnitude t / v^3) when the phase cannot be resolved to the budget.
PacketValue packet_evolve(const BumpProfile& bump, double v, double x, double t, const PacketOptions& opt = {});

// Upper bound on |B_t f_v(x)| from the first-derivative van der Corput bound on
// the monotone pieces of the phase derivative. Returns +inf when the phase is
// stationary inside the table.
double packet_vdc_bound(const BumpProfile& bump, double v, double x, double t);

// ||f_v||_{H^s} = (int (1 + xi^2)^s |f_hat_v|^2 dxi)^{1/2}
double packet_sobolev_norm(const BumpProfile& bump, double v, double s);

struct FloorCheck {
    double min_value = 0.0;
    double min_v = 0.0;
    double min_x = 0.0;
    double floor = 0.0;
    bool pass = false;
};

// min over the grid of |B_{t(x)} f_v(x)| at the focusing time, against c0
FloorCheck lemma_floor(const BumpProfile& bump, std::span<const double> vs, std::span<const double> xs,
                       const PacketOptions& opt = {}, unsigned threads = 1);

// Largest dyadic delta <= 1/4 for which the floor holds on vs with `samples`
// points spread over (0, delta).
double calibrate_delta(const BumpProfile& bump, std::span<const double> vs, int samples = 8,
                       const PacketOptions& opt = {}, unsigned threads = 1);

struct BoundSuite {
    // sup ||f_v||_{H^s} / v^{1/2 - 2s}
    double sobolev_constant = 0.0;
    // sup |B_t f_v(x)| sqrt(t) / v
    double dispersion_constant = 0.0;
    // sup |B_t f_v(x)| v^4 / t
    double low_frequency_constant = 0.0;
    std::size_t evaluations = 0;
};

// Sup over vs x (ts plus the focusing time t(x) of each v) x xs.
BoundSuite packet_bound_suite(const BumpProfile& bump, std::span<const double> vs, std::span<const double> ts,
                              std::span<const double> xs, double s, const PacketOptions& opt = {},
                              unsigned threads = 1);

}  // namespace blab
