#pragma once

#include <span>
#include <vector>

namespace blab {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> residuals;
    double max_abs_residual = 0.0;
};

// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Fit log(y) against log(x); all inputs must be positive.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

// Log-spaced points, `per_decade` per factor of ten, from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int per_decade);

}  // namespace blab
