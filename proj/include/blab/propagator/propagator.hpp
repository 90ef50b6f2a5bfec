#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blab/core/fit.hpp"
#include "blab/core/grid.hpp"
#include "blab/core/spectral_density.hpp"
#include "blab/dispersion/symbol.hpp"

namespace blab {

using Warnings = std::vector<std::string>;

// psi(r) = exp(-r^2)
double truncation_cutoff(double r);

struct EvolutionRequest {
    Spectrum spectrum;
    DispersionSymbol symbol{};
    double t = 0.0;
    // truncation level N >= 1; the multiplier gains psi(|xi| / N)
    std::optional<double> truncation;
};

// fraction of spectral energy in the outer 1/16 of the grid band
double band_edge_fraction(const Spectrum& s);

// Multiplies the spectrum by exp(i t Phi) (and psi(|xi|/N)).
Spectrum evolve_spectrum(const EvolutionRequest& req, Warnings* warnings = nullptr);
SampledSignal evolve(const EvolutionRequest& req, Warnings* warnings = nullptr);

struct OracleOptions {
    unsigned order = 10;
    double max_phase_per_panel = 1.5707963267948966;
    std::size_t panel_budget = 1u << 20;
    unsigned threads = 1;
};

// (2 pi)^{-1} int exp(i x xi + i t Phi) psi(|xi|/N) f_hat dxi at each x, by
// composite Gauss-Legendre. One panelization is shared by all x.
std::vector<cplx> evolve_oracle(const SpectralDensity& fhat, std::span<const double> x, const DispersionSymbol& symbol,
                                double t, std::optional<double> truncation = std::nullopt,
                                const OracleOptions& opt = {});

struct ScanOptions {
    unsigned threads = 1;
    // golden-section search around each argmax
    bool refine = false;
    // admit times outside (0, 1]
    bool any_time = false;
    std::optional<double> truncation;
};

struct MaximalScan {
    std::vector<double> times;
    std::vector<double> x;
    std::vector<double> sup;
    std::vector<std::size_t> argmax;
    // after refinement (equal to sup/argmax time when refine is off)
    std::vector<double> refined_sup;
    std::vector<double> refined_time;
    Warnings warnings;
};

MaximalScan maximal_scan(const Spectrum& s, const DispersionSymbol& symbol, std::span<const double> times,
                         const ScanOptions& opt = {});

// |B_t f(x)| by a direct sum over the spectrum
double pointwise_modulus(const Spectrum& s, const DispersionSymbol& symbol, double x, double t,
                         std::optional<double> truncation = std::nullopt);

// Log-spaced times on [lo, hi], `per_decade` points per decade.
std::vector<double> log_time_grid(double lo, double hi, int per_decade);
// 2^{-k} for k = k0..k1
std::vector<double> dyadic_times(int k0, int k1);

struct ConvergenceProfile {
    std::vector<double> times;
    std::vector<double> errors;
    // log(error) against log(t) over the smaller half of the positive times
    LineFit rate;
    // non-increasing (10% slack) after the largest error, with positive rate
    bool monotone = false;
};

// sup over grid points in [a, b] of |B_t f - f| for each t in a strictly
// decreasing sequence
ConvergenceProfile convergence_profile(const Spectrum& s, const DispersionSymbol& symbol,
                                       std::span<const double> times, double a, double b, unsigned threads = 1);

}  // namespace blab
