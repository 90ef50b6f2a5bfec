#include "blab/oscillatory/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blab/core/cutoff.hpp"
#include "blab/core/error.hpp"
#include "blab/core/parallel.hpp"
#include "blab/quad/oscillatory.hpp"

namespace blab {

namespace {

double phi(double xi) { return xi * std::sqrt(1.0 + xi * xi); }
double dphi(double xi) { return (1.0 + 2.0 * xi * xi) / std::sqrt(1.0 + xi * xi); }

// int_0^{2N} exp(i (d xi + tau Phi(xi))) rho_N^2 xi^{-sigma} dxi
quad::OscResult half_line(double d, double tau, double N, const KernelOptions& opt) {
    const double sigma = opt.sigma;
    const double p = 1.0 / (1.0 - sigma);
    const double top = 2.0 * N;
    const double edge = std::min(opt.substitution_edge, top);
    auto rho2 = [N](double xi) {
        const double r = smooth_cutoff(xi / N);
        return r * r;
    };
    const double l1 = std::pow(top, 1.0 - sigma) / (1.0 - sigma);

    quad::OscOptions o;
    o.abs_tol = 0.5 * opt.rel_tol * l1;
    o.panel_budget = opt.panel_budget;
    o.max_panel_width = 0.25 * N;

    // xi = u^p turns xi^{-sigma} dxi into p du
    quad::OscProblem near{
        [=](double u) { return quad::cplx(p * rho2(std::pow(u, p)), 0.0); },
        [=](double u) {
            const double xi = std::pow(u, p);
            return d * xi + tau * phi(xi);
        },
        [=](double u) {
            const double xi = std::pow(u, p);
            return (d + tau * dphi(xi)) * p * std::pow(u, p - 1.0);
        }};
    quad::OscOptions on = o;
    on.max_panel_width = std::numeric_limits<double>::infinity();
    quad::OscResult r = quad::integrate_oscillatory(near, 0.0, std::pow(edge, 1.0 / p), on);

    if (edge < top) {
        quad::OscProblem far{[=](double xi) { return quad::cplx(rho2(xi) * std::pow(xi, -sigma), 0.0); },
                             [=](double xi) { return d * xi + tau * phi(xi); },
                             [=](double xi) { return d + tau * dphi(xi); }};
        o.breakpoints = {N};
        const quad::OscResult rf = quad::integrate_oscillatory(far, edge, top, o);
        r.value += rf.value;
        r.error += rf.error;
        r.panels += rf.panels;
    }
    return r;
}

}  // namespace

namespace {

struct Sample {
    std::complex<double> value;
    double error;
};

// the negative half line is the positive one with d -> -d (Phi is even)
Sample kernel_sample(double d, double tau, double N, const KernelOptions& opt) {
    const quad::OscResult a = half_line(d, tau, N, opt);
    const quad::OscResult b = half_line(-d, tau, N, opt);
    return {a.value + b.value, a.error + b.error};
}

void check_options(const KernelOptions& opt) {
    if (!(opt.sigma >= 0.0 && opt.sigma < 1.0)) throw InvalidArgument("kernel exponent must lie in [0, 1)");
    if (!(opt.substitution_edge > 0.0)) throw InvalidArgument("substitution edge must be positive");
}

void check_probe_args(double d, std::span<const double> taus, double N) {
    if (!(d > 0.0)) throw InvalidArgument("kernel probe needs d > 0");
    if (!(N > 1.0)) throw InvalidArgument("kernel truncation N must exceed 1");
    if (taus.empty()) throw InvalidArgument("kernel probe needs at least one tau sample");
    for (double t : taus)
        if (!(t > 0.0 && t < 1.0 / 6.0)) throw InvalidArgument("tau sample " + std::to_string(t) + " outside (0, 1/6)");
}

}  // namespace

std::complex<double> kernel_value(double d, double tau, double N, const KernelOptions& opt) {
    if (!(N > 1.0)) throw InvalidArgument("kernel truncation N must exceed 1");
    check_options(opt);
    return kernel_sample(d, tau, N, opt).value;
}

KernelProbe kernel_probe(double d, std::span<const double> tau_samples, double N, const KernelOptions& opt) {
    check_probe_args(d, tau_samples, N);
    check_options(opt);
    KernelProbe kp{d, N, opt.sigma, 0.0, -1.0, 0.0};
    for (double tau : tau_samples) {
        const Sample s = kernel_sample(d, tau, N, opt);
        const double m = std::abs(s.value);
        if (m > kp.value) {
            kp.value = m;
            kp.tau_star = tau;
            kp.error = s.error;
        }
    }
    return kp;
}

std::vector<double> adversarial_taus(double d, int per_decade) {
    const double hi = (1.0 / 6.0) * (1.0 - 1e-9);
    std::vector<double> taus = log_grid(1e-6, hi, per_decade);
    const double boundary = 2.0 * d * d;
    if (boundary > 1e-6 && boundary < hi) taus.push_back(boundary);
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    return taus;
}

DecayFit decay_fit(std::span<const KernelProbe> probes) {
    if (probes.size() < 8) throw InvalidArgument("decay fit needs at least 8 probes");
    std::vector<double> d, v;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const KernelProbe& p : probes) {
        d.push_back(p.d);
        v.push_back(p.value);
        lo = std::min(lo, p.d);
        hi = std::max(hi, p.d);
    }
    DecayFit out;
    out.decades = std::log10(hi / lo);
    if (out.decades < 2.0 - 1e-9)
        throw InvalidArgument("decay fit needs probes spanning 2 decades of d, got " + std::to_string(out.decades));
    out.fit = fit_loglog(d, v);
    out.slope = out.fit.slope;
    for (const KernelProbe& p : probes) out.envelope = std::max(out.envelope, p.value * std::pow(p.d, 1.0 - p.sigma));
    return out;
}

std::vector<KernelProbe> kernel_sweep(std::span<const double> ds, double N, const KernelOptions& opt, int tau_per_decade,
                                      unsigned threads) {
    struct Job {
        std::size_t k;
        double tau;
    };
    check_options(opt);
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < ds.size(); ++k) {
        const std::vector<double> taus = adversarial_taus(ds[k], tau_per_decade);
        check_probe_args(ds[k], taus, N);
        for (double t : taus) jobs.push_back({k, t});
    }
    std::vector<Sample> out(jobs.size());
    parallel_for(jobs.size(), threads,
                 [&](std::size_t i) { out[i] = kernel_sample(ds[jobs[i].k], jobs[i].tau, N, opt); });

    std::vector<KernelProbe> probes(ds.size());
    for (std::size_t k = 0; k < ds.size(); ++k) probes[k] = {ds[k], N, opt.sigma, 0.0, -1.0, 0.0};
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        KernelProbe& kp = probes[jobs[i].k];
        const double m = std::abs(out[i].value);
        if (m > kp.value) {
            kp.value = m;
            kp.tau_star = jobs[i].tau;
            kp.error = out[i].error;
        }
    }
    return probes;
}

}  // namespace blab
