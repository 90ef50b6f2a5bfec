#pragma once

#include <complex>
#include <span>
#include <vector>

namespace blab {

// J_m(r) for m > -1/2 and r >= 0: power series below the first seam, the
// Schlafli integral between the seams, the Hankel expansion above the second.
double bessel_j(double m, double r);

// Branch seams used by bessel_j for order m.
double bessel_series_seam();
double bessel_asymptotic_seam(double m);

// Hankel expansion J_m(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi),
// chi = x - (m/2 + 1/4) pi. Accurate for x >= bessel_asymptotic_seam(m).
struct HankelPQ {
    double P = 1.0;
    double Q = 0.0;
};
HankelPQ hankel_pq(double m, double x);

// the three branches, exposed for seam checks
double bessel_j_series(double m, double r);
double bessel_j_integral(double m, double r);
double bessel_j_asymptotic(double m, double r);

// t^{1/2} J_{n/2-1}(t) ~ b1 e^{it} + b2 e^{-it}
struct BesselPair {
    int n = 2;
    double m = 0.0;
    std::complex<double> b1, b2;
};
BesselPair bessel_pair(int n);

struct DefectReport {
    std::vector<double> t;
    std::vector<double> defect;
    // sup of t * defect on t > 1 and of defect on t <= 1
    double c_large = 0.0;
    double c_small = 0.0;
    // slope of the per-period envelope of the defect on [1, t_max]; -inf when the
    // defect vanishes identically
    double slope = 0.0;
    bool exact = false;
};

// d(t) = |t^{1/2} J_{n/2-1}(t) - (b1 e^{it} + b2 e^{-it})| on the grid.
DefectReport bessel_asymptotic_defect(int n, std::span<const double> t_grid);

}  // namespace blab
