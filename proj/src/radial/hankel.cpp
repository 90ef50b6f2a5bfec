#include "blab/radial/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "blab/core/cutoff.hpp"
#include "blab/core/error.hpp"
#include "blab/core/fit.hpp"
#include "blab/core/parallel.hpp"
#include "blab/quad/gauss.hpp"
#include "blab/quad/oscillatory.hpp"
#include "blab/radial/bessel.hpp"

namespace blab {

namespace {

constexpr double kPi = std::numbers::pi;

double phi(double r) { return r * std::sqrt(1.0 + r * r); }
double dphi(double r) { return (1.0 + 2.0 * r * r) / std::sqrt(1.0 + r * r); }

void check_grid(int n, const std::vector<double>& grid) {
    if (n < 2) throw InvalidArgument("radial profiles need dimension n >= 2");
    if (grid.empty()) throw InvalidArgument("radial profile needs a nonempty r-grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0)) throw InvalidArgument("radial r-grid must be positive");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw InvalidArgument("radial r-grid must be strictly increasing");
    }
}

}  // namespace

RadialProfile make_radial_profile(int n, std::vector<double> grid, std::function<cplx(double)> fn, double lo, double hi,
                                  double scale) {
    check_grid(n, grid);
    if (!(hi > lo) || lo < 0.0) throw InvalidArgument("radial profile support must satisfy 0 <= lo < hi");
    if (hi > grid.back() * (1.0 + 1e-12)) throw InvalidArgument("radial profile support exceeds the r-grid");
    RadialProfile p;
    p.n = n;
    p.r = std::move(grid);
    p.fn = std::move(fn);
    p.lo = lo;
    p.hi = hi;
    p.scale = scale > 0.0 ? scale : hi - lo;
    for (double rr : p.r) p.samples.push_back(p(rr));
    return p;
}

RadialProfile radial_profile_from_samples(int n, std::vector<double> grid, std::vector<cplx> samples) {
    check_grid(n, grid);
    if (grid.size() != samples.size() || grid.size() < 2) throw InvalidArgument("radial samples must match the r-grid");
    auto r = std::make_shared<std::vector<double>>(grid);
    auto v = std::make_shared<std::vector<cplx>>(samples);
    // Catmull-Rom style cubic Hermite with finite-difference slopes
    auto fn = [r, v](double x) {
        const std::vector<double>& g = *r;
        const std::vector<cplx>& y = *v;
        const std::size_t n = g.size();
        std::size_t k = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), x) - g.begin());
        k = std::clamp<std::size_t>(k, 1, n - 1) - 1;
        auto slope = [&](std::size_t i) {
            if (i == 0) return (y[1] - y[0]) / (g[1] - g[0]);
            if (i == n - 1) return (y[n - 1] - y[n - 2]) / (g[n - 1] - g[n - 2]);
            return (y[i + 1] - y[i - 1]) / (g[i + 1] - g[i - 1]);
        };
        const double h = g[k + 1] - g[k];
        const double s = (x - g[k]) / h;
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
        return h00 * y[k] + h10 * h * slope(k) + h01 * y[k + 1] + h11 * h * slope(k + 1);
    };
    double scale = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < grid.size(); ++i) scale = std::min(scale, 4.0 * (grid[i] - grid[i - 1]));
    RadialProfile p;
    p.n = n;
    p.r = std::move(grid);
    p.samples = std::move(samples);
    p.fn = fn;
    p.lo = p.r.front();
    p.hi = p.r.back();
    p.scale = scale;
    return p;
}

double sphere_area(int n) { return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n); }

namespace {

double profile_l1(const RadialProfile& f) {
    const auto panels = static_cast<std::size_t>(std::clamp(std::ceil((f.hi - f.lo) / f.scale), 8.0, 4096.0));
    return quad::integrate([&](double r) { return std::abs(f(r)) * std::pow(r, 0.5 * f.n); }, f.lo, f.hi, panels, 20);
}

cplx hankel_value(const RadialProfile& f, double u, double t, double abs_tol, const RadialOptions& opt) {
    const int n = f.n;
    const double m = 0.5 * n - 1.0;
    const double pref = std::pow(2.0 * kPi, -0.5 * n);
    auto amp = [&](double r) { return f(r) * std::pow(r, 0.5 * n); };

    quad::OscOptions o;
    o.abs_tol = abs_tol;
    o.panel_budget = opt.panel_budget;
    o.max_panel_width = f.scale;

    if (u == 0.0) {
        if (n != 2) throw InvalidArgument("radial evaluation at u = 0 is only defined here for n = 2");
        quad::OscProblem p{amp, [=](double r) { return t * phi(r); }, [=](double r) { return t * dphi(r); }};
        return pref * quad::integrate_oscillatory(p, f.lo, f.hi, o).value;
    }

    const double split = std::clamp(bessel_asymptotic_seam(m) / u, f.lo, f.hi);
    cplx sum = 0.0;
    if (split > f.lo) {
        quad::OscOptions oi = o;
        oi.allow_levin = false;  // J(ru) oscillates inside the amplitude here
        oi.max_panel_width = std::min(f.scale, 0.5 * kPi / u);
        quad::OscProblem p{[&](double r) { return bessel_j(m, r * u) * amp(r); }, [=](double r) { return t * phi(r); },
                           [=](double r) { return t * dphi(r); }};
        sum += quad::integrate_oscillatory(p, f.lo, split, oi).value;
    }
    if (split < f.hi) {
        // J(x) = sqrt(2/(pi x)) Re[(P + iQ) e^{i(x - ph)}], split into e^{+-iru}
        const double ph = (0.5 * m + 0.25) * kPi;
        for (int sgn : {1, -1}) {
            const cplx rot = std::polar(1.0, -sgn * ph);
            quad::OscProblem p{[&, sgn, rot](double r) {
                                   const HankelPQ pq = hankel_pq(m, r * u);
                                   const cplx c(pq.P, sgn * pq.Q);
                                   return 0.5 * std::sqrt(2.0 / (kPi * r * u)) * c * rot * amp(r);
                               },
                               [=](double r) { return sgn * r * u + t * phi(r); },
                               [=](double r) { return sgn * u + t * dphi(r); }};
            quad::OscOptions oo = o;
            // Levin only pays off well above the amplitude's feature scale
            oo.allow_levin = u * f.scale >= 100.0;
            sum += quad::integrate_oscillatory(p, split, f.hi, oo).value;
        }
    }
    return pref * std::pow(u, 1.0 - 0.5 * n) * sum;
}

}  // namespace

std::vector<cplx> radial_evolve(const RadialProfile& f, std::span<const double> u,
                                const std::function<double(double)>& t_of_u, const RadialOptions& opt) {
    const double tol = opt.rel_tol * profile_l1(f);
    std::vector<cplx> out;
    out.reserve(u.size());
    for (double x : u) {
        if (!(x >= 0.0)) throw InvalidArgument("radial evaluation needs u >= 0");
        out.push_back(hankel_value(f, x, t_of_u(x), tol, opt));
    }
    return out;
}

cplx radial_value(const RadialProfile& f, double u, double t, const RadialOptions& opt) {
    const double x[] = {u};
    return radial_evolve(f, x, [t](double) { return t; }, opt)[0];
}

std::vector<double> symmetric_time_grid(double lo, double hi, int per_decade) {
    std::vector<double> g = {0.0};
    for (double t : log_grid(lo, hi, per_decade)) {
        g.push_back(t);
        g.push_back(-t);
    }
    std::sort(g.begin(), g.end());
    return g;
}

WeightedNorm weighted_maximal_norm(const RadialProfile& f, double q, double alpha, std::span<const double> t_grid,
                                   const WeightedNormOptions& opt) {
    if (!(opt.s >= 0.0 && opt.s < 0.5)) throw InvalidArgument("weighted norm needs s in [0, 1/2)");
    const double qmax = 2.0 / (1.0 - 2.0 * opt.s);
    if (!(q >= 2.0 && q <= qmax * (1.0 + 1e-12)))
        throw InvalidArgument("q must lie in [2, " + std::to_string(qmax) + "], got " + std::to_string(q));
    if (!(alpha + f.n > 0.0)) throw InvalidArgument("weight |x|^alpha is not locally integrable: alpha + n <= 0");
    if (t_grid.empty()) throw InvalidArgument("weighted norm needs a nonempty time grid");
    for (double t : t_grid) {
        const bool mirrored = std::any_of(t_grid.begin(), t_grid.end(),
                                          [t](double s) { return std::abs(s + t) <= 1e-12 * std::max(1.0, std::abs(t)); });
        if (!mirrored) throw InvalidArgument("time grid must be symmetric about 0");
    }

    double tmax = 0.0;
    for (double t : t_grid) tmax = std::max(tmax, std::abs(t));
    const double e = alpha + f.n;
    const double pref_n = std::pow(2.0 * kPi, -0.5 * f.n);
    const double m = 0.5 * f.n - 1.0;

    // Fixed r-rule resolving exp(i r u + i t Phi) for u <= umax; J(ru) is
    // shared by every t in the grid.
    struct RRule {
        std::vector<double> r;
        std::vector<std::vector<cplx>> wt;  // per t: weight * amplitude * exp(i t Phi)
    };
    auto make_rule = [&](double umax) {
        const double width = f.hi - f.lo;
        const double osc = width * (umax + tmax * dphi(f.hi)) / kPi;
        const auto panels = static_cast<std::size_t>(std::max(std::ceil(4.0 * width / f.scale), std::ceil(osc)));
        RRule rule;
        std::vector<double> w;
        quad::composite(quad::gauss_legendre(20), f.lo, f.hi, panels, rule.r, w);
        for (double t : t_grid) {
            std::vector<cplx> row(rule.r.size());
            for (std::size_t i = 0; i < row.size(); ++i) {
                const double r = rule.r[i];
                row[i] = w[i] * f(r) * std::pow(r, 0.5 * f.n) * std::polar(1.0, t * phi(r));
            }
            rule.wt.push_back(std::move(row));
        }
        return rule;
    };
    auto h_with = [&](const RRule& rule, double u) {
        std::vector<double> j(rule.r.size());
        for (std::size_t i = 0; i < j.size(); ++i) j[i] = u == 0.0 ? (m == 0.0 ? 1.0 : 0.0) : bessel_j(m, rule.r[i] * u);
        double best = 0.0;
        for (const std::vector<cplx>& row : rule.wt) {
            cplx acc = 0.0;
            for (std::size_t i = 0; i < j.size(); ++i) acc += j[i] * row[i];
            best = std::max(best, std::abs(acc));
        }
        const double M = pref_n * std::pow(u, 1.0 - 0.5 * f.n) * best;
        return std::pow(M, q) * std::pow(u, e);
    };

    auto rule_size = [&](double umax) {
        return (f.hi - f.lo) * (umax + tmax * dphi(f.hi)) / kPi;
    };
    const double tol = RadialOptions{}.rel_tol * profile_l1(f);
    // single point: the fixed rule while it stays small, the adaptive integrator beyond
    auto h_at = [&](double u) {
        if (rule_size(u) <= 400.0) return h_with(make_rule(u), u);
        double best = 0.0;
        for (double t : t_grid) best = std::max(best, std::abs(hankel_value(f, u, t, tol, RadialOptions{})));
        return std::pow(best * pref_n * std::pow(u, 1.0 - 0.5 * f.n), q) * std::pow(u, e);
    };

    WeightedNorm out;
    // [0, u_min] with M frozen at u_min
    double total = h_at(opt.u_min) / e;
    double peak = 0.0;
    int quiet = 0;
    const quad::Rule& gl = quad::gauss_legendre(10);
    const double l0 = std::log10(opt.u_min);
    const int decades = static_cast<int>(std::ceil(opt.max_decades)) + static_cast<int>(std::ceil(-l0));
    constexpr int kProbes = 32, kChunks = 8;
    for (int k = 0; k < decades; ++k) {
        const double a = std::pow(10.0, l0 + k), b = 10.0 * a;
        std::vector<double> probe(kProbes);
        parallel_for(probe.size(), opt.threads,
                     [&](std::size_t i) { probe[i] = h_at(a * std::pow(10.0, i / (kProbes - 1.0))); });
        const double pmax = *std::max_element(probe.begin(), probe.end());
        out.u_max = b;
        if (peak > 0.0 && pmax < 1e-12 * peak) {
            if (++quiet == 3) {
                out.tail_certified = true;
                break;
            }
            continue;
        }
        quiet = 0;
        peak = std::max(peak, pmax);
        if (pmax * std::log(10.0) <= 1e-14 * total) {
            // negligible decade: trapezoid on the probes
            const double dl = std::log(10.0) / (kProbes - 1.0);
            for (int i = 0; i < kProbes; ++i) total += (i == 0 || i == kProbes - 1 ? 0.5 : 1.0) * dl * probe[i];
            continue;
        }
        for (int c = 0; c < kChunks; ++c) {
            const double ca = a * std::pow(10.0, double(c) / kChunks), cb = a * std::pow(10.0, double(c + 1) / kChunks);
            const RRule rule = make_rule(cb);
            // enough panels for the oscillation of B f at frequency hi
            const double osc = (cb - ca) * f.hi / kPi;
            const auto panels =
                static_cast<std::size_t>(std::max(std::ceil(double(opt.panels_per_decade) / kChunks), std::ceil(osc)));
            std::vector<double> nodes, weights;
            quad::composite(gl, std::log(ca), std::log(cb), panels, nodes, weights);
            std::vector<double> vals(nodes.size());
            parallel_for(nodes.size(), opt.threads, [&](std::size_t i) { vals[i] = h_with(rule, std::exp(nodes[i])); });
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                total += weights[i] * vals[i];
                peak = std::max(peak, vals[i]);
            }
        }
    }
    if (!out.tail_certified)
        out.note = "integrand not below 1e-12 of its peak for three decades up to u = " + std::to_string(out.u_max);
    out.value = std::pow(sphere_area(f.n) * total, 1.0 / q);
    return out;
}

namespace {

RadialProfile annulus_profile(int n, double lambda) {
    return make_radial_profile(n, log_grid(lambda / 64.0, 2.0 * lambda, 32),
                               [lambda](double r) { return cplx(annulus_bump(r / lambda), 0.0); }, lambda, 2.0 * lambda,
                               lambda / 16.0);
}

}  // namespace

double annulus_transform(int n, double y) {
    if (y == 0.0)
        return sphere_area(n) *
               quad::integrate([n](double r) { return annulus_bump(r) * std::pow(r, n - 1); }, 1.0, 2.0, 64, 20);
    return std::pow(2.0 * kPi, n) * radial_value(annulus_profile(n, 1.0), std::abs(y), 0.0).real();
}

double annulus_half_radius(int n) {
    double lo = 0.0, step = 0.01;
    while (annulus_transform(n, lo + step) > 0.5) {
        lo += step;
        if (lo > 100.0) throw Error("annulus transform does not fall to 1/2");
    }
    double hi = lo + step;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (annulus_transform(n, mid) > 0.5 ? lo : hi) = mid;
    }
    return lo;
}

SharpnessReport sharpness_scan(int n, double s, double q, double alpha, std::span<const double> lambdas, unsigned threads) {
    if (n < 2) throw InvalidArgument("sharpness scan needs n >= 2");
    if (!(q >= 2.0)) throw InvalidArgument("q must be at least 2");
    if (!(alpha + n > 0.0)) throw InvalidArgument("alpha + n must be positive");
    if (lambdas.size() < 2) throw InvalidArgument("sharpness scan needs several lambda values");
    double lmin = std::numeric_limits<double>::infinity(), lmax = 0.0;
    for (double l : lambdas) {
        int ex = 0;
        if (!(l > 0.0) || std::frexp(l, &ex) != 0.5) throw InvalidArgument("sharpness scan needs dyadic lambda");
        lmin = std::min(lmin, l);
        lmax = std::max(lmax, l);
    }
    if (std::log10(lmax / lmin) < 3.0 - 1e-12) throw InvalidArgument("sharpness scan needs lambda spanning 3 decades");

    SharpnessReport rep;
    rep.n = n;
    rep.s = s;
    rep.q = q;
    rep.alpha = alpha;
    rep.delta = annulus_half_radius(n);
    rep.c0 = 0.5 * std::pow(2.0 * kPi, -n);
    rep.alpha_star = q * (0.5 * n - s) - n;
    const double omega = sphere_area(n);
    const double e = alpha + n;
    const double c1 = rep.c0 * std::pow(omega * std::pow(rep.delta, e) / e, 1.0 / q);

    rep.rows.resize(lambdas.size());
    parallel_for(lambdas.size(), threads, [&](std::size_t i) {
        const double lam = lambdas[i];
        SharpnessRow& row = rep.rows[i];
        row.lambda = lam;
        row.sobolev = std::sqrt(omega * quad::integrate(
                                            [&](double r) {
                                                const double b = annulus_bump(r / lam);
                                                return std::pow(r, 2.0 * s + n - 1) * b * b;
                                            },
                                            lam, 2.0 * lam, 64, 20));
        // int_0^c F(u) u^{e-1} du = c^e / e int_0^1 F(c w^{1/e}) dw
        const RadialProfile prof = annulus_profile(n, lam);
        const double c = rep.delta / lam;
        std::vector<double> w, ww;
        quad::composite(quad::gauss_legendre(20), 0.0, 1.0, 8, w, ww);
        double acc = 0.0;
        row.min_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < w.size(); ++j) {
            const double b0 = std::abs(radial_value(prof, c * std::pow(w[j], 1.0 / e), 0.0));
            acc += ww[j] * std::pow(b0, q);
            row.min_ratio = std::min(row.min_ratio, b0 / (rep.c0 * std::pow(lam, n)));
        }
        row.weighted = std::pow(omega * std::pow(c, e) / e * acc, 1.0 / q);
        row.floor = c1 * std::pow(lam, n - e / q);
    });

    std::vector<double> l, sob, wt;
    rep.floor_ok = true;
    for (const SharpnessRow& r : rep.rows) {
        l.push_back(r.lambda);
        sob.push_back(r.sobolev);
        wt.push_back(r.weighted);
        rep.floor_ok = rep.floor_ok && r.min_ratio >= 1.0 && r.weighted >= r.floor;
    }
    rep.sobolev_slope = fit_loglog(l, sob).slope;
    rep.weighted_slope = fit_loglog(l, wt).slope;
    rep.margin_large = rep.sobolev_slope - rep.weighted_slope;
    rep.margin_small = -rep.margin_large;
    rep.sobolev_ok = std::abs(rep.sobolev_slope - (0.5 * n + s)) <= 0.05;
    rep.weighted_ok = std::abs(rep.weighted_slope - (n - e / q)) <= 0.05;
    rep.compatible = rep.margin_large >= -0.1 && rep.margin_small >= -0.1;
    return rep;
}

}  // namespace blab
