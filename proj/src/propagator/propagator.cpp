#include "blab/propagator/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "blab/core/error.hpp"
#include "blab/core/parallel.hpp"
#include "blab/quad/gauss.hpp"
#include "blab/simd/kernels.hpp"

namespace blab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_truncation(std::optional<double> n, Warnings* warnings) {
    if (!n) return;
    if (!(*n >= 1.0) || !std::isfinite(*n)) throw InvalidArgument("truncation level must be >= 1");
    if (*n == 1.0 && warnings) warnings->push_back("truncation level N = 1 is outside the N > 1 regime");
}

}  // namespace

double truncation_cutoff(double r) { return std::exp(-r * r); }

double band_edge_fraction(const Spectrum& s) {
    const Grid& g = s.grid();
    const double edge = (15.0 / 16.0) * g.dxi() * static_cast<double>(g.size() / 2);
    double total = 0.0, outer = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double e = std::norm(s.coeffs()[j]);
        total += e;
        if (std::abs(g.xi(j)) >= edge) outer += e;
    }
    return total > 0.0 ? outer / total : 0.0;
}

Spectrum evolve_spectrum(const EvolutionRequest& req, Warnings* warnings) {
    if (!std::isfinite(req.t)) throw InvalidArgument("evolution time must be finite");
    check_truncation(req.truncation, warnings);
    const Grid& g = req.spectrum.grid();
    if (warnings) {
        const double frac = band_edge_fraction(req.spectrum);
        if (frac > 1e-8) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "band edge carries %.3g of the spectral energy; wrap-around likely", frac);
            warnings->push_back(buf);
        }
    }
    std::vector<double> phase(g.size()), amp(g.size(), 1.0);
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double xi = g.xi(j);
        phase[j] = req.t * req.symbol.phi(xi);
        if (req.truncation) amp[j] = truncation_cutoff(std::abs(xi) / *req.truncation);
    }
    std::vector<cplx> c(req.spectrum.coeffs().begin(), req.spectrum.coeffs().end());
    simd::apply_phase(c, phase, amp);
    return Spectrum(g, std::move(c));
}

SampledSignal evolve(const EvolutionRequest& req, Warnings* warnings) {
    return inverse(evolve_spectrum(req, warnings));
}

std::vector<cplx> evolve_oracle(const SpectralDensity& fhat, std::span<const double> x, const DispersionSymbol& symbol,
                                double t, std::optional<double> truncation, const OracleOptions& opt) {
    if (!std::isfinite(t)) throw InvalidArgument("evolution time must be finite");
    check_truncation(truncation, nullptr);
    if (!(fhat.hi > fhat.lo)) throw InvalidArgument("oracle needs a spectral density with lo < hi");
    double xmax = 0.0;
    for (double v : x) xmax = std::max(xmax, std::abs(v));
    const double speed = xmax + std::abs(t) * symbol.max_abs_dphi(fhat.lo, fhat.hi);
    double width = 0.5 * fhat.scale;
    if (speed > 0.0) width = std::min(width, opt.max_phase_per_panel / speed);

    std::vector<std::pair<double, double>> pieces;
    if (fhat.lo < 0.0 && fhat.hi > 0.0) pieces = {{fhat.lo, 0.0}, {0.0, fhat.hi}};
    else pieces = {{fhat.lo, fhat.hi}};

    const quad::Rule& rule = quad::gauss_legendre(opt.order);
    std::vector<double> nodes, weights;
    std::size_t total = 0;
    for (auto [a, b] : pieces) {
        const auto panels = static_cast<std::size_t>(std::ceil((b - a) / width));
        total += panels;
        if (total > opt.panel_budget)
            throw BudgetExceeded("oracle panel budget exceeded: phase too fast for the panel limit");
        quad::composite(rule, a, b, panels, nodes, weights);
    }

    // amplitude w_j psi f_hat e^{i t Phi} / (2 pi), shared by every x
    std::vector<cplx> amp(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double xi = nodes[j];
        double a = weights[j] / kTwoPi;
        if (truncation) a *= truncation_cutoff(std::abs(xi) / *truncation);
        amp[j] = fhat(xi) * a * std::polar(1.0, t * symbol.phi(xi));
    }
    std::vector<cplx> out(x.size());
    parallel_for(x.size(), opt.threads, [&](std::size_t i) {
        std::vector<double> phase(nodes.size());
        for (std::size_t j = 0; j < nodes.size(); ++j) phase[j] = x[i] * nodes[j];
        out[i] = simd::oscillatory_sum(phase, amp);
    });
    return out;
}

double pointwise_modulus(const Spectrum& s, const DispersionSymbol& symbol, double x, double t,
                         std::optional<double> truncation) {
    const Grid& g = s.grid();
    std::vector<double> phase(g.size());
    std::vector<cplx> amp(g.size());
    const double scale = 1.0 / g.length();
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double xi = g.xi(j);
        phase[j] = x * xi + t * symbol.phi(xi);
        double a = scale;
        if (truncation) a *= truncation_cutoff(std::abs(xi) / *truncation);
        amp[j] = s.coeffs()[j] * a;
    }
    return std::abs(simd::oscillatory_sum(phase, amp));
}

MaximalScan maximal_scan(const Spectrum& s, const DispersionSymbol& symbol, std::span<const double> times,
                         const ScanOptions& opt) {
    if (times.empty()) throw InvalidArgument("maximal_scan needs a nonempty time grid");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!std::isfinite(times[k])) throw InvalidArgument("maximal_scan: non-finite time");
        if (k > 0 && !(times[k] > times[k - 1])) throw InvalidArgument("maximal_scan: times must be strictly increasing");
        if (!opt.any_time && !(times[k] > 0.0 && times[k] <= 1.0))
            throw InvalidArgument("maximal_scan: times must lie in (0, 1]");
    }
    const Grid& g = s.grid();
    const std::size_t n = g.size();
    MaximalScan out;
    out.times.assign(times.begin(), times.end());
    out.x.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.x[j] = g.x(j);
    out.sup.assign(n, -1.0);
    out.argmax.assign(n, 0);
    check_truncation(opt.truncation, &out.warnings);
    if (band_edge_fraction(s) > 1e-8) out.warnings.push_back("band edge carries more than 1e-8 of the spectral energy");

    // |B_t f| for a batch of times in parallel, merged in index order; strict
    // comparison keeps the smallest index on ties
    const std::size_t batch = std::max<std::size_t>(8, 4 * static_cast<std::size_t>(std::max(1u, opt.threads)));
    std::vector<std::vector<double>> mods(batch);
    for (std::size_t k0 = 0; k0 < times.size(); k0 += batch) {
        const std::size_t cnt = std::min(batch, times.size() - k0);
        parallel_for(cnt, opt.threads, [&](std::size_t b) {
            const SampledSignal u = evolve(EvolutionRequest{s, symbol, times[k0 + b], opt.truncation});
            mods[b].resize(n);
            for (std::size_t j = 0; j < n; ++j) mods[b][j] = std::abs(u.values()[j]);
        });
        for (std::size_t b = 0; b < cnt; ++b)
            for (std::size_t j = 0; j < n; ++j)
                if (mods[b][j] > out.sup[j]) {
                    out.sup[j] = mods[b][j];
                    out.argmax[j] = k0 + b;
                }
    }

    out.refined_sup = out.sup;
    out.refined_time.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.refined_time[j] = times[out.argmax[j]];
    if (!opt.refine || times.size() < 2) return out;

    parallel_for(n, opt.threads, [&](std::size_t j) {
        const std::size_t k = out.argmax[j];
        double lo = times[k > 0 ? k - 1 : 0];
        double hi = times[std::min(k + 1, times.size() - 1)];
        auto f = [&](double t) { return pointwise_modulus(s, symbol, out.x[j], t, opt.truncation); };
        const double r = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
        double fc = f(c), fd = f(d);
        double best = out.sup[j], best_t = times[k];
        for (int it = 0; it < 40 && hi - lo > 1e-12 * hi; ++it) {
            if (fc > best) best = fc, best_t = c;
            if (fd > best) best = fd, best_t = d;
            if (fc >= fd) {
                hi = d, d = c, fd = fc;
                c = hi - r * (hi - lo);
                fc = f(c);
            } else {
                lo = c, c = d, fc = fd;
                d = lo + r * (hi - lo);
                fd = f(d);
            }
        }
        if (fc > best) best = fc, best_t = c;
        if (fd > best) best = fd, best_t = d;
        out.refined_sup[j] = best;
        out.refined_time[j] = best_t;
    });
    return out;
}

std::vector<double> log_time_grid(double lo, double hi, int per_decade) {
    if (!(lo > 0.0) || !(hi >= lo)) throw InvalidArgument("log_time_grid needs 0 < lo <= hi");
    return log_grid(lo, hi, per_decade);
}

std::vector<double> dyadic_times(int k0, int k1) {
    std::vector<double> t;
    for (int k = k0; k <= k1; ++k) t.push_back(std::ldexp(1.0, -k));
    return t;
}

ConvergenceProfile convergence_profile(const Spectrum& s, const DispersionSymbol& symbol,
                                       std::span<const double> times, double a, double b, unsigned threads) {
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!std::isfinite(times[k]) || times[k] < 0.0) throw InvalidArgument("convergence_profile: bad time");
        if (k > 0 && !(times[k] < times[k - 1]))
            throw InvalidArgument("convergence_profile: times must be strictly decreasing");
    }
    const Grid& g = s.grid();
    const SampledSignal f0 = inverse(s);
    ConvergenceProfile out;
    out.times.assign(times.begin(), times.end());
    out.errors.assign(times.size(), 0.0);
    parallel_for(times.size(), threads, [&](std::size_t k) {
        const SampledSignal u = evolve(EvolutionRequest{s, symbol, times[k], std::nullopt});
        double e = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double xj = g.x(j);
            if (xj < a || xj > b) continue;
            e = std::max(e, std::abs(u.values()[j] - f0.values()[j]));
        }
        out.errors[k] = e;
    });
    // rate from the smaller half of the positive times, where the error is
    // in its linear regime
    std::vector<double> lt, le;
    std::size_t npos = 0;
    for (double t : times) npos += t > 0.0;
    std::size_t seen = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] > 0.0)) continue;
        if (++seen <= npos / 2) continue;
        if (out.errors[k] > 0.0) lt.push_back(times[k]), le.push_back(out.errors[k]);
    }
    if (lt.size() >= 2) out.rate = fit_loglog(lt, le);
    // decreasing trend: no step up by more than 10% after the peak
    std::size_t peak = 0;
    for (std::size_t k = 1; k < times.size(); ++k)
        if (out.errors[k] > out.errors[peak]) peak = k;
    out.monotone = lt.size() >= 2 && out.rate.slope > 0.0;
    for (std::size_t k = peak + 1; k < times.size(); ++k)
        if (out.errors[k] > 1.1 * out.errors[k - 1]) out.monotone = false;
    return out;
}

}  // namespace blab
