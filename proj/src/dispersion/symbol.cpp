#include "blab/dispersion/symbol.hpp"

#include <cmath>
#include <string>

#include "blab/core/error.hpp"

namespace blab {

SymbolValue DispersionSymbol::eval(double xi) const {
    if (!std::isfinite(xi)) throw InvalidArgument("symbol evaluated at a non-finite frequency");
    if (kind_ == SymbolKind::schrodinger) return {xi * xi, 2.0 * xi, 2.0};
    const double a = std::abs(xi);
    const double q = std::sqrt(1.0 + a * a);
    const double sign = xi < 0.0 ? -1.0 : 1.0;
    return {a * q, sign * (1.0 + 2.0 * a * a) / q, (3.0 * a + 2.0 * a * a * a) / (q * q * q)};
}

double DispersionSymbol::phi(double xi) const {
    if (kind_ == SymbolKind::schrodinger) return xi * xi;
    const double a = std::abs(xi);
    return a * std::sqrt(1.0 + a * a);
}

double DispersionSymbol::dphi(double xi) const { return eval(xi).dphi; }

double DispersionSymbol::max_abs_dphi(double a, double b) const {
    // |Phi'| is even and increasing in |xi| for both symbols
    return std::abs(dphi(std::max(std::abs(a), std::abs(b))));
}

double DispersionSymbol::stationary_point(double slope) const {
    if (kind_ == SymbolKind::schrodinger) {
        if (!(slope >= 0.0)) throw InvalidArgument("no stationary point: slope below the range of Phi'");
        return 0.5 * slope;
    }
    if (!(slope >= 1.0) || !std::isfinite(slope))
        throw InvalidArgument("no stationary point: slope " + std::to_string(slope) + " is below the range of Phi' (>= 1)");
    if (slope == 1.0) return 0.0;
    // Phi'(a) - 1 = a^2 (2 - 1/(1+q)) / q, q = sqrt(1+a^2), solved for the
    // excess so that slopes near 1 keep full relative accuracy
    const double target = slope - 1.0;
    auto excess = [](double a) {
        const double q = std::sqrt(1.0 + a * a);
        return a * a * (2.0 - 1.0 / (1.0 + q)) / q;
    };
    double lo = 0.0, hi = std::max(1.0, slope);
    double x = target < 1.0 ? std::sqrt(target / 1.5) : 0.5 * slope;
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = excess(x) - target;
        if (f == 0.0) return x;
        if (f > 0) hi = x;
        else lo = x;
        const double d2 = eval(x).d2phi;
        double nx = d2 > 0 ? x - f / d2 : 0.5 * (lo + hi);
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (std::abs(nx - x) <= 1e-15 * x || hi - lo <= 1e-15 * hi) return nx;
        x = nx;
    }
    return x;
}

double boussinesq_excess(double y) {
    y = std::abs(y);
    return y / (y + std::sqrt(1.0 + y * y));
}

double boussinesq_excess_deriv(double y) {
    y = std::abs(y);
    const double q = std::sqrt(1.0 + y * y);
    const double s = y + q;
    return 1.0 / (s * s * q);
}

double focusing_time(double x, double v) {
    if (!(x > 0.0) || !(v > 0.0)) throw InvalidArgument("focusing_time needs x > 0 and v > 0");
    return x / DispersionSymbol().dphi(1.0 / (v * v));
}

double focusing_time_closed(double x, double v) {
    if (!(x > 0.0) || !(v > 0.0)) throw InvalidArgument("focusing_time needs x > 0 and v > 0");
    const double v2 = v * v, v4 = v2 * v2;
    return x * v2 * std::sqrt(v4 + 1.0) / (v4 + 2.0);
}

}  // namespace blab
