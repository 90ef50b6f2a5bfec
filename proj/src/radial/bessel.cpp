#include "blab/radial/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "blab/core/error.hpp"
#include "blab/core/fit.hpp"
#include "blab/quad/gauss.hpp"

namespace blab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesSeam = 12.0;

void check_order(double m) {
    if (!(m > -0.5)) throw InvalidArgument("Bessel order must exceed -1/2");
}

}  // namespace

double bessel_series_seam() { return kSeriesSeam; }

// the Hankel terms shrink like (m^2 / x)^k at first, so the seam grows with m^2
double bessel_asymptotic_seam(double m) { return std::max(25.0, 2.0 * m * m + 20.0); }

double bessel_j_series(double m, double r) {
    check_order(m);
    if (r < 0.0) throw InvalidArgument("Bessel argument must be nonnegative");
    if (r == 0.0) return m == 0.0 ? 1.0 : (m > 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    const double h = 0.5 * r;
    double term = std::exp(m * std::log(h) - std::lgamma(m + 1.0));
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= -h * h / (k * (k + m));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

double bessel_j_integral(double m, double r) {
    check_order(m);
    // J_m(r) = (1/pi) int_0^pi cos(m th - r sin th) dth
    //        - (sin(m pi)/pi) int_0^inf exp(-r sinh u - m u) du
    const auto panels = static_cast<std::size_t>(std::ceil((r + std::abs(m)) / 4.0)) + 4;
    double v = quad::integrate([=](double th) { return std::cos(m * th - r * std::sin(th)); }, 0.0, kPi, panels, 20) / kPi;
    const double s = std::sin(m * kPi);
    if (s != 0.0 && r > 0.0) {
        // the integrand is below e^{-40} beyond r sinh u = 40 + |m| u
        const double top = std::asinh((40.0 + 10.0 * std::abs(m)) / r) + 1.0;
        v -= s / kPi * quad::integrate([=](double u) { return std::exp(-r * std::sinh(u) - m * u); }, 0.0, top, 16, 20);
    }
    return v;
}

HankelPQ hankel_pq(double m, double x) {
    const double mu = 4.0 * m * m;
    HankelPQ pq{0.0, 0.0};
    double term = 1.0;  // a_k(m) / x^k
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
        if (k > 0) {
            const double odd = 2.0 * k - 1.0;
            term *= (mu - odd * odd) / (k * 8.0 * x);
        }
        const double a = std::abs(term);
        if (a > prev) break;  // optimal truncation of the divergent series
        // P = sum (-1)^j a_{2j}, Q = sum (-1)^j a_{2j+1}
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) pq.P += sign * term;
        else pq.Q += sign * term;
        if (term == 0.0 || a < 1e-17) break;
        prev = a;
    }
    return pq;
}

double bessel_j_asymptotic(double m, double r) {
    check_order(m);
    const HankelPQ pq = hankel_pq(m, r);
    const double chi = r - (0.5 * m + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * r)) * (pq.P * std::cos(chi) - pq.Q * std::sin(chi));
}

double bessel_j(double m, double r) {
    check_order(m);
    if (!(r >= 0.0)) throw InvalidArgument("Bessel argument must be nonnegative");
    if (r <= kSeriesSeam) return bessel_j_series(m, r);
    if (r >= bessel_asymptotic_seam(m)) return bessel_j_asymptotic(m, r);
    return bessel_j_integral(m, r);
}

BesselPair bessel_pair(int n) {
    if (n < 2) throw InvalidArgument("ambient dimension must be at least 2");
    BesselPair bp;
    bp.n = n;
    bp.m = 0.5 * n - 1.0;
    const double a = 0.5 * std::sqrt(2.0 / kPi);
    const double ph = kPi * (n - 1) / 4.0;
    bp.b1 = {a * std::cos(ph), -a * std::sin(ph)};
    bp.b2 = {a * std::cos(ph), a * std::sin(ph)};
    return bp;
}

DefectReport bessel_asymptotic_defect(int n, std::span<const double> t_grid) {
    const BesselPair bp = bessel_pair(n);
    auto defect = [&](double t) {
        const std::complex<double> model = bp.b1 * std::polar(1.0, t) + bp.b2 * std::polar(1.0, -t);
        return std::abs(std::sqrt(t) * bessel_j(bp.m, t) - model);
    };
    DefectReport rep;
    double tmax = 0.0;
    for (double t : t_grid) {
        if (!(t > 0.0)) throw InvalidArgument("defect grid must be positive");
        const double d = defect(t);
        rep.t.push_back(t);
        rep.defect.push_back(d);
        if (t > 1.0) rep.c_large = std::max(rep.c_large, t * d);
        else rep.c_small = std::max(rep.c_small, d);
        tmax = std::max(tmax, t);
    }

    // envelope: max over one period after each point, on [1, tmax]
    std::vector<double> et, ed;
    double peak = 0.0;
    for (double t : t_grid) {
        if (t < 1.0) continue;
        double e = 0.0;
        for (int k = 0; k < 64; ++k) e = std::max(e, defect(t + 2.0 * kPi * k / 64.0));
        et.push_back(t);
        ed.push_back(e);
        peak = std::max(peak, e);
    }
    // for n = 3 the model is exact; what is left is the rounding of the
    // trigonometric arguments, which grows like t * eps
    rep.exact = peak <= 1e-14 * std::max(1.0, tmax);
    if (rep.exact) {
        rep.slope = -std::numeric_limits<double>::infinity();
    } else if (et.size() >= 2) {
        rep.slope = fit_loglog(et, ed).slope;
    }
    return rep;
}

}  // namespace blab
