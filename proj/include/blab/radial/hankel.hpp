#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blab {

using cplx = std::complex<double>;

// Radial f_hat(r) in dimension n, supported in [lo, hi] inside the r-grid.
struct RadialProfile {
    int n = 2;
    std::vector<double> r;         // strictly increasing, positive
    std::vector<cplx> samples;     // f_hat on r
    std::function<cplx(double)> fn;  // f_hat between the samples
    double lo = 0.0, hi = 0.0;
    double scale = 1.0;  // feature width of f_hat

    cplx operator()(double rr) const { return (rr < lo || rr > hi) ? cplx(0.0, 0.0) : fn(rr); }
};

// Profile from an exact function; the samples are taken on `grid`.
RadialProfile make_radial_profile(int n, std::vector<double> grid, std::function<cplx(double)> fn, double lo, double hi,
                                  double scale);
// Profile from samples alone, with cubic Hermite interpolation between them.
RadialProfile radial_profile_from_samples(int n, std::vector<double> grid, std::vector<cplx> samples);

struct RadialOptions {
    double rel_tol = 1e-11;
    std::size_t panel_budget = 400000;
};

// B_{t(u)} f(u) = (2pi)^{n/2-n} u^{1-n/2} int J_{n/2-1}(r u) e^{i t Phi(r)} f_hat(r) r^{n/2} dr.
// u = 0 is allowed only for n = 2.
std::vector<cplx> radial_evolve(const RadialProfile& f, std::span<const double> u,
                                const std::function<double(double)>& t_of_u, const RadialOptions& opt = {});
cplx radial_value(const RadialProfile& f, double u, double t, const RadialOptions& opt = {});

// area of the unit sphere in R^n
double sphere_area(int n);

struct WeightedNorm {
    double value = 0.0;
    double u_max = 0.0;  // upper end of the integration
    bool tail_certified = false;
    std::string note;
};

struct WeightedNormOptions {
    double s = 0.25;  // q must lie in [2, 2/(1-2s)]
    double u_min = 1e-6;
    double max_decades = 8.0;
    int panels_per_decade = 64;
    unsigned threads = 1;
};

// (omega_{n-1} int_0^inf (sup_{t in grid} |B_t f(u)|)^q u^{alpha+n-1} du)^{1/q}
WeightedNorm weighted_maximal_norm(const RadialProfile& f, double q, double alpha, std::span<const double> t_grid,
                                   const WeightedNormOptions& opt = {});

// symmetric log grid |t| in [lo, hi] plus t = 0
std::vector<double> symmetric_time_grid(double lo, double hi, int per_decade);

struct SharpnessRow {
    double lambda = 0.0;
    double sobolev = 0.0;   // ||f_lambda||_{H^s homogeneous}
    double weighted = 0.0;  // weighted norm of B_0 f_lambda on |x| < delta / lambda
    double floor = 0.0;     // c1 lambda^{n - (alpha+n)/q}
    double min_ratio = 0.0;  // min over |x| < delta/lambda of |B_0 f_lambda| / (c0 lambda^n)
};

struct SharpnessReport {
    int n = 2;
    double s = 0.0, q = 0.0, alpha = 0.0;
    double delta = 0.0;
    double c0 = 0.0;
    std::vector<SharpnessRow> rows;
    double sobolev_slope = 0.0;
    double weighted_slope = 0.0;
    double alpha_star = 0.0;      // q (n/2 - s) - n
    double margin_large = 0.0;    // sobolev_slope - weighted_slope (lambda -> inf needs >= 0)
    double margin_small = 0.0;    // weighted_slope - sobolev_slope (lambda -> 0 needs >= 0)
    bool sobolev_ok = false;      // slope n/2 + s within 0.05
    bool weighted_ok = false;     // slope n - (alpha+n)/q within 0.05
    bool compatible = false;      // both margins >= -0.1, i.e. the slopes agree to 0.1
    bool floor_ok = false;        // |B_0 f_lambda| >= c0 lambda^n on |x| < delta/lambda
};

// f_hat_lambda(xi) = phi(xi / lambda) with the annulus bump phi.
SharpnessReport sharpness_scan(int n, double s, double q, double alpha, std::span<const double> lambdas,
                               unsigned threads = 1);

// the annulus bump's transform phi_hat(y) = int e^{i y.eta} phi(eta) d eta (radial)
double annulus_transform(int n, double y);
// first y > 0 with phi_hat(y) = 1/2
double annulus_half_radius(int n);

}  // namespace blab
