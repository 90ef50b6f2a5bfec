#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace blab::quad {

using cplx = std::complex<double>;

// Integrand A(x) exp(i theta(x)) with theta' supplied separately.
struct OscProblem {
    std::function<cplx(double)> amplitude;
    std::function<double(double)> phase;
    std::function<double(double)> dphase;
};

struct OscOptions {
    // absolute tolerance for the whole interval; <= 0 means rel_tol * int |A|
    double abs_tol = 0.0;
    double rel_tol = 1e-12;
    // initial panels are no wider than this (set to the amplitude's feature scale)
    double max_panel_width = std::numeric_limits<double>::infinity();
    std::size_t panel_budget = 400000;
    // interior points where the integrand is not smooth
    std::vector<double> breakpoints;
    // disable the collocation branch (plain adaptive Gauss-Legendre)
    bool allow_levin = true;
};

struct OscResult {
    cplx value{0.0, 0.0};
    double error = 0.0;
    std::size_t panels = 0;
    std::size_t levin_panels = 0;
};

// Adaptive integration of A e^{i theta} over [a, b]. Panels with small phase
// variation use paired Gauss-Legendre rules; panels with a large, sign-definite
// theta' use Levin collocation on Chebyshev points; anything else is bisected.
// Throws BudgetExceeded when the panel budget or bisection depth runs out.
OscResult integrate_oscillatory(const OscProblem& prob, double a, double b, const OscOptions& opt = {});

// Estimate of int_a^b |A| used for automatic tolerances.
double amplitude_l1(const std::function<cplx(double)>& amp, double a, double b, std::size_t panels);

}  // namespace blab::quad
