#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "blab/core/fit.hpp"

namespace blab {

// Truncated kernel
//   K(d, tau) = int exp(i (d xi + tau Phi(xi))) rho_N(xi)^2 |xi|^{-sigma} dxi
// with rho_N(xi) = rho(xi / N), rho = 1 on |xi| <= 1 and 0 on |xi| >= 2.
// For the s-order kernel sigma = 2s.
struct KernelOptions {
    double sigma = 0.5;
    // [0, edge] is integrated in u with xi = u^{1/(1-sigma)}
    double substitution_edge = 1.0;
    double rel_tol = 1e-11;
    std::size_t panel_budget = 400000;
};

struct KernelProbe {
    double d = 0.0;
    double N = 0.0;
    double sigma = 0.0;
    double tau_star = 0.0;  // maximizing sample
    double value = 0.0;     // sup over the samples of |K|
    double error = 0.0;
};

std::complex<double> kernel_value(double d, double tau, double N, const KernelOptions& opt = {});

// sup over tau_samples of |K(d, tau)|; each tau must lie in (0, 1/6).
KernelProbe kernel_probe(double d, std::span<const double> tau_samples, double N, const KernelOptions& opt = {});

// Log grid of `per_decade` points in (1e-6, 1/6) plus tau = 2 d^2 when it falls inside.
std::vector<double> adversarial_taus(double d, int per_decade = 6);

struct DecayFit {
    LineFit fit;
    double slope = 0.0;
    // max over the probes of value * d^{1 - sigma}
    double envelope = 0.0;
    double decades = 0.0;
};

// Needs at least 8 probes spanning 2 decades of d.
DecayFit decay_fit(std::span<const KernelProbe> probes);

// Probes on a d log grid, evaluated in parallel.
std::vector<KernelProbe> kernel_sweep(std::span<const double> ds, double N, const KernelOptions& opt, int tau_per_decade,
                                      unsigned threads);

}  // namespace blab
