#include "blab/core/cutoff.hpp"

#include <cmath>

namespace blab {

namespace {
double psi(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }
}  // namespace

double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = psi(u), b = psi(1.0 - u);
    return a / (a + b);
}

double smooth_cutoff(double xi) { return 1.0 - smooth_step(std::abs(xi) - 1.0); }

double annulus_bump(double r) {
    r = std::abs(r);
    if (r <= 1.0 || r >= 2.0) return 0.0;
    if (r < 1.25) return smooth_step(4.0 * (r - 1.0));
    if (r > 1.75) return smooth_step(4.0 * (2.0 - r));
    return 1.0;
}

}  // namespace blab
