#include "blab/wavepacket/packet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "blab/core/ddouble.hpp"
#include "blab/core/error.hpp"
#include "blab/core/parallel.hpp"
#include "blab/dispersion/symbol.hpp"
#include "blab/quad/gauss.hpp"
#include "blab/quad/oscillatory.hpp"

namespace blab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEps = 0x1p-53;
// residual relative rounding of double-double products, with slack
constexpr double kExtended = 0x1p-50;

void check_v(double v) {
    if (!(v > 0.0 && v < 1.0)) throw InvalidArgument("packet parameter v must lie in (0, 1)");
}

template <class... A>
std::string format(const char* fmt, A... args) {
    char buf[200];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

dd::DD inverse_square(double v) { return dd::DD(1.0) / (dd::DD(v) * dd::DD(v)); }

// F(xi) - F(0) with h = xi / v, a = 1 / v^2:
//   h (x - 2 a t) + t h^2 + t (rho(|a - h|) - rho(a))
struct PacketPhase {
    double v, t, a, rho_a;
    double c1;
    dd::DD c1d;
    bool extended;

    double h_of(double xi) const { return xi / v; }

    double operator()(double xi) const {
        const double h = h_of(xi);
        const double tail = t * (boussinesq_excess(std::abs(a - h)) - rho_a);
        if (!extended) return h * c1 + t * h * h + tail;
        const dd::DD hd = dd::DD(xi) / dd::DD(v);
        const dd::DD th = hd * c1d + dd::DD(t) * hd * hd + dd::DD(tail);
        return dd::reduce_two_pi(th);
    }

    // side = -1 takes the left limit at the kink h = a
    double deriv(double xi, int side = 0) const {
        const double h = h_of(xi);
        double s = h > a ? 1.0 : -1.0;
        if (h == a) s = side < 0 ? -1.0 : 1.0;
        return (c1 + 2.0 * t * h + t * s * boussinesq_excess_deriv(std::abs(a - h))) / v;
    }
};

PacketPhase make_phase(double v, double x, double t, bool extended) {
    PacketPhase p{};
    p.v = v;
    p.t = t;
    p.a = 1.0 / (v * v);
    p.rho_a = boussinesq_excess(p.a);
    p.extended = extended;
    p.c1d = dd::DD(x) - dd::DD(2.0) * inverse_square(v) * dd::DD(t);
    p.c1 = extended ? p.c1d.value() : x - 2.0 * p.a * t;
    return p;
}

}  // namespace

cplx WavePacket::value(double x) const {
    check_v(v);
    const double amp = bump->gcheck(x / v);
    if (amp == 0.0) return {0.0, 0.0};
    return std::polar(amp, dd::reduce_two_pi(-(dd::DD(x) * inverse_square(v))));
}

double WavePacket::fhat(double xi) const { return v * bump->g(v * xi + 1.0 / v); }

double WavePacket::fhat_modulus(double xi) const { return std::abs(fhat(xi)); }

PacketValue packet_evolve(const BumpProfile& bump, double v, double x, double t, const PacketOptions& opt) {
    check_v(v);
    if (!std::isfinite(x) || !std::isfinite(t)) throw InvalidArgument("packet_evolve needs finite x and t");
    const bool ext = opt.precision == Precision::extended;
    const PacketPhase ph = make_phase(v, x, t, ext);

    // constant phase F(0) = a (t a - x) + t rho(a), reduced in double-double
    const dd::DD ad = inverse_square(v);
    const dd::DD f0 = ad * (dd::DD(t) * ad - dd::DD(x)) + dd::DD(t * ph.rho_a);
    if (std::abs(f0.hi) > 1e30)
        throw PrecisionError(format("packet constant phase %.3g exceeds the reduction range (t/v^3 = %.3g)", f0.hi,
                                    t / (v * v * v)),
                             t / (v * v * v));
    const double phase0 = dd::reduce_two_pi(f0);

    const int range = bump.range();
    const double m0 = 2.0 * bump.abs_moment(0.0, range, 0);
    const double tol = opt.rel_tol * m0;
    const int r = bump.effective_range(0.1 * tol);
    const double neglected = 2.0 * bump.abs_moment(r, range, 0) + bump.tail_bound();

    // int |g| |dF| with |dF| from rounding in h c1, a t and t h^2
    const double m1 = 2.0 * bump.abs_moment(0.0, r, 1);
    const double m2 = 2.0 * bump.abs_moment(0.0, r, 2);
    const double at = 2.0 * ph.a * std::abs(t);
    const double kappa = ext ? kExtended : 1.0;
    const double perr = kEps * (kappa * ((m1 / v) * (std::abs(ph.c1) + at) + std::abs(t) * m2 / (v * v)) +
                                std::abs(t) * m0) +
                        1e-31 * std::abs(f0.hi) * m0;
    if (perr > opt.phase_budget * m0)
        throw PrecisionError(format("packet phase rounding %.3g rad exceeds the budget %.3g (t/v^3 = %.3g)", perr / m0,
                                    opt.phase_budget, t / (v * v * v)),
                             t / (v * v * v));

    quad::OscProblem prob{[&](double xi) { return cplx(bump.g(xi), 0.0); }, [&](double xi) { return ph(xi); },
                          [&](double xi) { return ph.deriv(xi); }};
    quad::OscOptions oo;
    oo.abs_tol = tol;
    oo.max_panel_width = 4.0;
    oo.panel_budget = opt.panel_budget;
    const double kink = 1.0 / v;
    if (kink < r) oo.breakpoints.push_back(kink);
    const quad::OscResult res = quad::integrate_oscillatory(prob, -r, r, oo);

    PacketValue out;
    out.value = std::polar(1.0, phase0) * res.value / kTwoPi;
    out.phase_error = perr / kTwoPi;
    out.error = (res.error + neglected + perr) / kTwoPi;
    out.panels = res.panels;
    return out;
}

double packet_vdc_bound(const BumpProfile& bump, double v, double x, double t) {
    check_v(v);
    const PacketPhase ph = make_phase(v, x, t, false);
    PacketPhase exact = ph;
    exact.c1 = ph.c1d.value();
    const double range = bump.range();
    const double kink = 1.0 / v;
    std::vector<std::pair<double, double>> pieces;
    if (kink < range) pieces = {{-range, kink}, {kink, range}};
    else pieces = {{-range, range}};

    // TV of the even function g over [p, q]
    auto tv = [&](double p, double q) {
        if (p >= 0.0) return bump.total_variation(p, q);
        if (q <= 0.0) return bump.total_variation(-q, -p);
        return bump.total_variation(0.0, -p) + bump.total_variation(0.0, q);
    };
    double bound = bump.tail_bound();
    for (auto [p, q] : pieces) {
        const double dl = exact.deriv(p, +1);
        const double dr = exact.deriv(q, -1);
        if (!(dl * dr > 0.0)) return std::numeric_limits<double>::infinity();
        const double gamma = std::min(std::abs(dl), std::abs(dr));
        bound += (2.0 / gamma) * (std::abs(bump.g(q)) + tv(p, q));
    }
    return bound / kTwoPi;
}

double packet_sobolev_norm(const BumpProfile& bump, double v, double s) {
    check_v(v);
    // v int (1 + ((eta - 1/v) / v)^2)^s g(eta)^2 d eta
    const quad::Rule& rule = quad::gauss_legendre(20);
    const int range = bump.range();
    double sum = 0.0;
    for (int m = -range; m < range; ++m) {
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double eta = m + 0.5 + 0.5 * rule.x[i];
            const double u = (eta - 1.0 / v) / v;
            const double gv = bump.g(eta);
            sum += 0.5 * rule.w[i] * std::pow(1.0 + u * u, s) * gv * gv;
        }
    }
    return std::sqrt(v * sum);
}

FloorCheck lemma_floor(const BumpProfile& bump, std::span<const double> vs, std::span<const double> xs,
                       const PacketOptions& opt, unsigned threads) {
    if (vs.empty() || xs.empty()) throw InvalidArgument("lemma_floor needs nonempty grids");
    const std::size_t n = vs.size() * xs.size();
    std::vector<double> lower(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const double v = vs[i / xs.size()], x = xs[i % xs.size()];
        const PacketValue pv = packet_evolve(bump, v, x, focusing_time(x, v), opt);
        lower[i] = std::abs(pv.value) - pv.error;
    });
    FloorCheck out;
    out.floor = bump.c0();
    out.min_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        if (lower[i] < out.min_value) {
            out.min_value = lower[i];
            out.min_v = vs[i / xs.size()];
            out.min_x = xs[i % xs.size()];
        }
    out.pass = out.min_value >= out.floor;
    return out;
}

double calibrate_delta(const BumpProfile& bump, std::span<const double> vs, int samples, const PacketOptions& opt,
                       unsigned threads) {
    if (samples < 1) throw InvalidArgument("calibrate_delta needs at least one sample");
    for (int e = 2; e <= 12; ++e) {
        const double delta = std::ldexp(1.0, -e);
        std::vector<double> xs;
        for (int i = 1; i <= samples; ++i) xs.push_back(delta * i / (samples + 1));
        if (lemma_floor(bump, vs, xs, opt, threads).pass) return delta;
    }
    throw InvalidArgument("no dyadic delta down to 2^-12 satisfies the focusing floor");
}

BoundSuite packet_bound_suite(const BumpProfile& bump, std::span<const double> vs, std::span<const double> ts,
                              std::span<const double> xs, double s, const PacketOptions& opt, unsigned threads) {
    BoundSuite out;
    for (double v : vs) {
        const double r = packet_sobolev_norm(bump, v, s) / std::pow(v, 0.5 - 2.0 * s);
        out.sobolev_constant = std::max(out.sobolev_constant, r);
    }
    // each (v, x) also gets its focusing time, where the sup sits
    const std::size_t nt = ts.size() + 1;
    const std::size_t n = vs.size() * nt * xs.size();
    std::vector<double> disp(n), low(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const double v = vs[i / (nt * xs.size())];
        const std::size_t k = (i / xs.size()) % nt;
        const double x = xs[i % xs.size()];
        const double t = k < ts.size() ? ts[k] : focusing_time(x, v);
        const double b = std::abs(packet_evolve(bump, v, x, t, opt).value);
        disp[i] = b * std::sqrt(t) / v;
        low[i] = b * std::pow(v, 4) / t;
    });
    for (std::size_t i = 0; i < n; ++i) {
        out.dispersion_constant = std::max(out.dispersion_constant, disp[i]);
        out.low_frequency_constant = std::max(out.low_frequency_constant, low[i]);
    }
    out.evaluations = n;
    return out;
}

}  // namespace blab
