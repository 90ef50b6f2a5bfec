#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "blab/core/grid.hpp"
#include "blab/core/rng.hpp"

namespace blab {

// A frequency-side function f_hat supported in [lo, hi]. `scale` is the
// smallest feature width of f_hat, used to size quadrature panels.
struct SpectralDensity {
    std::function<cplx(double)> fn;
    double lo = 0.0;
    double hi = 0.0;
    double scale = 1.0;

    cplx operator()(double xi) const { return (xi < lo || xi > hi) ? cplx(0.0, 0.0) : fn(xi); }
    Spectrum sample(const Grid& grid) const;
};

// Sum of complex Gaussian bumps, multiplied by a smooth window that is 1 on
// |xi| <= band/2 and 0 on |xi| >= band. With high_pass the sum is also
// multiplied by 1 - phi(xi), so it vanishes on |xi| <= 1.
struct GaussianMixture {
    std::vector<double> centers;
    std::vector<double> widths;
    std::vector<cplx> weights;
    double band = 1.0;
    bool high_pass = false;

    cplx operator()(double xi) const;
    SpectralDensity density() const;
};

GaussianMixture random_bandlimited(const CounterRng& rng, double band, int components, bool high_pass = false);

// (int w(xi) |f_hat|^2 dxi)^{1/2} by composite Gauss-Legendre on [lo, hi].
double sobolev_norm(const SpectralDensity& f, const SobolevParams& p);

}  // namespace blab
