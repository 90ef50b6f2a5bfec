#include "blab/lab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "blab/core/error.hpp"
#include "blab/core/fit.hpp"
#include "blab/core/io.hpp"
#include "blab/core/parallel.hpp"
#include "blab/core/rng.hpp"
#include "blab/core/spectral_density.hpp"
#include "blab/fractal/measure.hpp"
#include "blab/oscillatory/kernel.hpp"
#include "blab/oscillatory/vdc.hpp"
#include "blab/propagator/propagator.hpp"
#include "blab/radial/bessel.hpp"
#include "blab/radial/hankel.hpp"
#include "blab/wavepacket/bump.hpp"
#include "blab/wavepacket/counterexample.hpp"

namespace blab::lab {

namespace {

constexpr double kPi = std::numbers::pi;

using std::int64_t;

Check check(std::string name, bool pass, std::string detail) { return {std::move(name), pass, std::move(detail)}; }

std::string f6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<double> exp_grid(double lo, double hi, int per_decade) { return log_grid(lo, hi, per_decade); }

// ---------------------------------------------------------------- convergence

void run_convergence(const ExperimentConfig& c, Results& r) {
    const Grid g(c.real("half_width"), static_cast<std::size_t>(c.integer("points")));
    const GaussianMixture m =
        random_bandlimited(CounterRng(c.seed), c.real("band"), static_cast<int>(c.integer("components")), c.flag("high_pass"));
    const Spectrum spec = m.density().sample(g);
    const double edge = band_edge_fraction(spec);
    if (edge > 1e-8) r.warnings.push_back("band edge carries " + f6(edge) + " of the spectral energy");
    const std::vector<double> times = dyadic_times(static_cast<int>(c.integer("k_min")), static_cast<int>(c.integer("k_max")));
    const double w = c.real("window");
    const ConvergenceProfile p = convergence_profile(spec, DispersionSymbol(), times, -w, w, c.threads);

    Table t{"profile", {"k", "t", "sup_error"}, {}};
    for (std::size_t i = 0; i < p.times.size(); ++i)
        t.add({static_cast<int64_t>(c.integer("k_min") + static_cast<long>(i)), p.times[i], p.errors[i]});
    r.tables.push_back(std::move(t));

    const double hs = sobolev_norm(m.density(), SobolevParams{c.real("s"), false});
    r.metrics["sobolev_norm"] = hs;
    r.metrics["rate"] = p.rate.slope;
    r.metrics["rate_intercept"] = p.rate.intercept;
    r.checks.push_back(check("monotone-trend", p.monotone,
                             "sup error non-increasing after its peak, fitted rate " + f6(p.rate.slope)));
    r.checks.push_back(check("finite-norm", std::isfinite(hs) && hs > 0.0, "||f||_{H^s} = " + f6(hs)));
}

// ------------------------------------------------------------- counterexample

void run_counterexample(const ExperimentConfig& c, Results& r) {
    const BumpProfile bump = make_bump();
    PacketOptions opt;
    opt.precision = c.precision;
    const double delta = c.real("delta");
    const int P = static_cast<int>(c.integer("x_points"));
    std::vector<double> xs;
    for (int i = 1; i <= P; ++i) xs.push_back(0.5 * delta + 0.5 * delta * i / (P + 1.0));
    const double v0 = bump.v0();
    const std::vector<double> vs{v0 / 2, v0 / 4, v0 / 8};

    const FloorCheck fc = lemma_floor(bump, vs, xs, opt, c.threads);
    const Counterexample cx = build_counterexample(bump, default_counterexample(bump, c.real("s"), static_cast<int>(c.integer("K")), delta));
    std::vector<int> ks;
    for (int k = 1; k <= c.integer("K"); ++k) ks.push_back(k);
    const WitnessReport wr = divergence_witness(bump, cx, ks, xs, opt, c.threads);

    Table wt{"witness", {"k", "x", "modulus", "floor", "pass"}, {}};
    for (const WitnessRow& w : wr.rows)
        wt.add({static_cast<int64_t>(w.k), w.x, w.certified, wr.floor, static_cast<int64_t>(w.pass)});
    r.tables.push_back(std::move(wt));
    Table st{"series", {"k", "v", "sobolev_norm"}, {}};
    for (std::size_t k = 0; k < cx.v.size(); ++k) st.add({static_cast<int64_t>(k + 1), cx.v[k], cx.norms[k]});
    r.tables.push_back(std::move(st));

    // bound constants on a coarse and a refined time grid
    const double tlo = 1e-8, thi = 0.99;
    const auto coarse = exp_grid(tlo, thi, static_cast<int>(c.integer("bound_per_decade")));
    const auto fine = exp_grid(tlo, thi, static_cast<int>(c.integer("bound_refined_per_decade")));
    const BoundSuite b1 = packet_bound_suite(bump, vs, coarse, xs, c.real("s"), opt, c.threads);
    const BoundSuite b2 = packet_bound_suite(bump, vs, fine, xs, c.real("s"), opt, c.threads);
    Table bt{"bounds", {"grid", "dispersion_constant", "low_frequency_constant", "sobolev_constant"}, {}};
    bt.add({std::string("coarse"), b1.dispersion_constant, b1.low_frequency_constant, b1.sobolev_constant});
    bt.add({std::string("refined"), b2.dispersion_constant, b2.low_frequency_constant, b2.sobolev_constant});
    r.tables.push_back(std::move(bt));

    r.metrics["c0"] = bump.c0();
    r.metrics["integral_g"] = bump.integral();
    r.metrics["floor_min"] = fc.min_value;
    r.metrics["witness_k0"] = wr.k0;
    r.metrics["certificate"] = cx.certificate;
    r.metrics["geometric_constant"] = cx.geometric_constant;
    r.metrics["tail_bound"] = cx.tail_bound;
    r.metrics["series_bound"] = cx.series_bound;
    r.metrics["dispersion_constant"] = {b1.dispersion_constant, b2.dispersion_constant};
    r.metrics["low_frequency_constant"] = {b1.low_frequency_constant, b2.low_frequency_constant};
    r.budgets["phase_budget"] = opt.phase_budget;
    r.budgets["panel_budget"] = opt.panel_budget;

    const double c0_expected = 0.25 * std::abs(bump.integral_quadrature()) / (2.0 * kPi);
    r.checks.push_back(check("c0", std::abs(bump.c0() - c0_expected) <= 1e-8 * c0_expected,
                             "c0 = " + f6(bump.c0()) + " against |int g| / (8 pi) = " + f6(c0_expected)));
    r.checks.push_back(check("floor", fc.pass, "min |B_t(x) f_v(x)| = " + f6(fc.min_value) + " >= c0 = " + f6(fc.floor)));
    std::string lv;
    for (const WitnessLevel& l : wr.levels) lv += " k=" + std::to_string(l.k) + ":" + f6(l.min_certified);
    r.checks.push_back(check("witness", wr.pass, "certified minima" + lv + " against c0/2 = " + f6(wr.floor)));
    auto stable = [](double a, double b) { return std::isfinite(a) && std::isfinite(b) && b <= 2.0 * a && a <= 2.0 * b; };
    r.checks.push_back(check("dispersion-constant", stable(b1.dispersion_constant, b2.dispersion_constant),
                             f6(b1.dispersion_constant) + " -> " + f6(b2.dispersion_constant) + " under refinement"));
    r.checks.push_back(check("low-frequency-constant", stable(b1.low_frequency_constant, b2.low_frequency_constant),
                             f6(b1.low_frequency_constant) + " -> " + f6(b2.low_frequency_constant) + " under refinement"));
    const double beta = 0.5 - 2.0 * c.real("s");
    r.checks.push_back(check("certificate", std::isfinite(cx.certificate) && cx.certificate <= cx.series_bound,
                             "sum ||f_vk|| = " + f6(cx.certificate) + ", geometric tail C 2^{-k " + f6(beta) +
                                 "} beyond K: " + f6(cx.tail_bound)));
}

// ---------------------------------------------------------------- kernel decay

void run_kernel(const ExperimentConfig& c, Results& r) {
    KernelOptions ko;
    ko.sigma = c.text("sigma") == "auto" ? 2.0 * c.real("s") : std::stod(c.text("sigma"));
    if (!(ko.sigma > 0.0 && ko.sigma < 1.0)) throw ConfigError("sigma", "kernel exponent must lie in (0, 1)");
    ko.rel_tol = c.real("rel_tol");
    const std::vector<double> ds = exp_grid(c.real("d_min"), c.real("d_max"), static_cast<int>(c.integer("d_per_decade")));
    const double target = -(1.0 - ko.sigma);
    const double lo = target - 0.1, hi = target + 0.1;

    Table t{"probes", {"d", "tau_star", "N", "probe"}, {}};
    Table ft{"fits", {"N", "slope", "intercept", "envelope"}, {}};
    double emin = INFINITY, emax = 0.0;
    bool slopes_ok = true;
    std::string detail;
    nlohmann::json per_n = nlohmann::json::array();
    for (double N : c.reals("N_list")) {
        const std::vector<KernelProbe> probes =
            kernel_sweep(ds, N, ko, static_cast<int>(c.integer("tau_per_decade")), c.threads);
        for (const KernelProbe& p : probes) t.add({p.d, p.tau_star, N, p.value});
        const DecayFit fit = decay_fit(probes);
        ft.add({N, fit.slope, fit.fit.intercept, fit.envelope});
        per_n.push_back({{"N", N}, {"slope", fit.slope}, {"intercept", fit.fit.intercept}, {"envelope", fit.envelope},
                         {"residuals", fit.fit.residuals}});
        const bool ok = fit.slope >= lo && fit.slope <= hi;
        slopes_ok = slopes_ok && ok;
        detail += " N=" + f6(N) + ":" + f6(fit.slope);
        emin = std::min(emin, fit.envelope);
        emax = std::max(emax, fit.envelope);
    }
    r.tables.push_back(std::move(t));
    r.tables.push_back(std::move(ft));
    r.metrics["sigma"] = ko.sigma;
    r.metrics["fits"] = per_n;
    r.metrics["slope_window"] = {lo, hi};
    r.metrics["envelope_spread"] = emax / emin;
    r.budgets["rel_tol"] = ko.rel_tol;
    r.budgets["panel_budget"] = ko.panel_budget;
    r.checks.push_back(check("slope-window", slopes_ok, "slopes" + detail + " against [" + f6(lo) + ", " + f6(hi) + "]"));
    r.checks.push_back(check("envelope-spread", emax <= c.real("envelope_spread") * emin,
                             "envelope max/min across N = " + f6(emax / emin)));
}

// -------------------------------------------------------------- van der Corput

// |int_1^2 exp(i lambda x^2) dx| * sqrt(2 lambda), computed in extended precision
double quadratic_reference(double lambda) {
    if (lambda == 10.0) return 0.22908079236068798199;
    if (lambda == 100.0) return 0.079631050805286385631;
    return 0.033359874173227499687;
}

void run_vdc(const ExperimentConfig& c, Results& r) {
    const VdcSuite suite = vdc_suite(c.seed, static_cast<std::size_t>(c.integer("per_order")), c.threads);
    Table t{"instances", {"label", "order", "integral", "denominator", "ratio", "skipped"}, {}};
    for (const VdcResult& v : suite.results)
        t.add({v.label, static_cast<int64_t>(v.order), v.integral, v.denominator, v.ratio, static_cast<int64_t>(v.skipped)});

    const double tol = c.real("tolerance");
    double worst = 0.0;
    Table ct{"closed_forms", {"label", "lambda", "ratio", "reference", "error"}, {}};
    for (double l : c.reals("linear_lambdas")) {
        const VdcResult v = vdc_check(vdc_linear(l));
        const double ref = 2.0 * std::abs(std::sin(0.5 * l));
        ct.add({std::string("linear"), l, v.ratio, ref, std::abs(v.ratio - ref)});
        worst = std::max(worst, std::abs(v.ratio - ref));
    }
    for (double l : c.reals("quadratic_lambdas")) {
        const VdcResult v = vdc_check(vdc_quadratic(l));
        const double ref = quadratic_reference(l);
        ct.add({std::string("quadratic"), l, v.ratio, ref, std::abs(v.ratio - ref)});
        worst = std::max(worst, std::abs(v.ratio - ref));
    }
    r.tables.push_back(std::move(t));
    r.tables.push_back(std::move(ct));
    r.metrics["constant"] = suite.constant;
    r.metrics["constant_order1"] = suite.constant_order1;
    r.metrics["constant_order2"] = suite.constant_order2;
    r.metrics["skipped"] = suite.skipped;
    if (suite.skipped) r.warnings.push_back(std::to_string(suite.skipped) + " instances skipped (hypothesis not met)");
    r.checks.push_back(check("constant", std::isfinite(suite.constant) && suite.constant > 0.0,
                             "sup ratio = " + f6(suite.constant) + " (order 1: " + f6(suite.constant_order1) +
                                 ", order 2: " + f6(suite.constant_order2) + ")"));
    r.checks.push_back(check("closed-forms", worst <= tol, "max error " + f6(worst) + " against " + f6(tol)));
}

// ------------------------------------------------------------- measure maximal

std::vector<double> doubled(const std::vector<double>& v) {
    std::vector<double> out = v;
    const double step = v.size() >= 2 ? v[v.size() - 1] / v[v.size() - 2] : 2.0;
    while (out.size() < 2 * v.size()) out.push_back(out.back() * step);
    return out;
}

void run_measure(const ExperimentConfig& c, Results& r) {
    const double s = c.real("s");
    // uniform energy against the continuum value 4 sqrt(2) / 3
    const DiscreteMeasure uni = uniform_measure(static_cast<int>(c.integer("uniform_depth")));
    const MeasureStats us = measure_stats(uni, 0.5, {}, c.threads);
    const double exact = 4.0 * std::sqrt(2.0) / 3.0;
    const double ue = us.energy_continuum.value_or(us.energy);

    const DiscreteMeasure mu = cantor_measure(c.real("ratio"), static_cast<int>(c.integer("depth")));
    const double alpha = mu.similarity_dimension();
    const MeasureStats ms = measure_stats(mu, alpha, {}, c.threads);

    Table et{"energy", {"measure", "alpha", "direct", "majorant", "c_alpha", "dominated"}, {}};
    bool dominated = true;
    for (const auto& [name, m] : {std::pair<std::string, const DiscreteMeasure*>{"uniform", &uni}, {"cantor", &mu}}) {
        const double a = m == &uni ? 1.0 : alpha;
        if (!(a > 1.0 - 2.0 * s)) {
            r.warnings.push_back(name + ": alpha <= 1 - 2s, majorant not defined");
            continue;
        }
        const EnergyBound eb = dyadic_energy_bound(*m, s, a);
        et.add({name, a, eb.direct, eb.majorant, eb.c_alpha, static_cast<int64_t>(eb.dominated)});
        dominated = dominated && eb.dominated;
    }
    r.tables.push_back(std::move(et));

    const std::vector<double> t1 = dyadic_times(1, static_cast<int>(c.integer("k_max")));
    const std::vector<double> t2 = dyadic_times(1, static_cast<int>(2 * c.integer("k_max")));
    const std::vector<double> n1 = c.reals("N_list");
    const std::vector<double> n2 = doubled(n1);
    Table rt{"ratios", {"function", "ratio", "ratio_doubled", "norm"}, {}};
    double best1 = 0.0, best2 = 0.0, worst_growth = 0.0;
    const long F = c.integer("functions");
    for (long i = 0; i < F; ++i) {
        const GaussianMixture g = random_bandlimited(CounterRng(c.seed).substream(static_cast<std::uint64_t>(i)),
                                                     c.real("band"), static_cast<int>(c.integer("components")));
        const SpectralDensity f = g.density();
        const MaximalRatio a = mu_maximal_ratio(f, mu, t1, n1, s, alpha, DispersionSymbol(), c.threads);
        const MaximalRatio b = mu_maximal_ratio(f, mu, t2, n2, s, alpha, DispersionSymbol(), c.threads);
        rt.add({static_cast<int64_t>(i), a.ratio, b.ratio, a.norm});
        best1 = std::max(best1, a.ratio);
        best2 = std::max(best2, b.ratio);
        worst_growth = std::max(worst_growth, b.ratio / a.ratio - 1.0);
    }
    r.tables.push_back(std::move(rt));

    r.metrics["uniform_energy"] = ue;
    r.metrics["uniform_energy_discrete"] = us.energy;
    r.metrics["cantor_alpha"] = alpha;
    r.metrics["cantor_c_alpha"] = ms.c_alpha;
    r.metrics["cantor_energy"] = ms.energy;
    r.metrics["max_ratio"] = best1;
    r.metrics["max_ratio_doubled"] = best2;
    r.metrics["worst_single_growth"] = worst_growth;
    const double rel = std::abs(ue / exact - 1.0);
    r.checks.push_back(check("uniform-energy", rel <= c.real("energy_tolerance"),
                             "I_1/2 = " + f6(ue) + " against 4 sqrt(2)/3 = " + f6(exact) + " (rel " + f6(rel) +
                                 "; raw off-diagonal sum " + f6(us.energy) + ")"));
    r.checks.push_back(check("majorant", dominated, "dyadic majorant dominates the direct energy"));
    const double growth = best2 / best1 - 1.0;
    r.checks.push_back(check("ratio-finite", std::isfinite(best1) && std::isfinite(best2),
                             "max ratio " + f6(best1) + " -> " + f6(best2)));
    r.checks.push_back(check("saturation", growth <= c.real("saturation"),
                             "growth " + f6(growth) + " when doubling the (k, N) set"));
}

// ------------------------------------------------------------------ lower bound

void run_lower_bound(const ExperimentConfig& c, Results& r) {
    LowerBoundOptions o;
    o.x_nodes = static_cast<int>(c.integer("x_nodes"));
    o.t_per_decade = static_cast<int>(c.integer("t_per_decade"));
    o.eps = c.real("eps");
    o.threads = c.threads;
    const double s = c.real("s");
    const LowerBoundScan scan = lower_bound_scan(c.reals("N_list"), c.real("alpha"), s, o);
    Table t{"scan", {"N", "lhs", "lhs_at_focus", "c_alpha", "norm", "rhs"}, {}};
    for (const LowerBoundRow& row : scan.rows) t.add({row.N, row.lhs, row.lhs_at_focus, row.c_alpha, row.norm, row.rhs});
    r.tables.push_back(std::move(t));
    r.metrics["lhs_slope"] = scan.lhs_slope;
    r.metrics["norm_slope"] = scan.norm_slope;
    r.metrics["rhs_slope"] = scan.rhs_slope;
    r.metrics["c_slope"] = scan.c_slope;
    r.metrics["ratio_slope"] = scan.ratio_slope;
    r.checks.push_back(check("lhs-slope", scan.lhs_slope >= 1.0 - o.eps, "LHS slope " + f6(scan.lhs_slope)));
    const double want = s + 0.5;
    r.checks.push_back(check("norm-slope", std::abs(scan.norm_slope - want) <= c.real("norm_tolerance"),
                             "||f||_{H^s} slope " + f6(scan.norm_slope) + " against " + f6(want)));
    r.checks.push_back(check("rhs-slope", scan.rhs_pass, "RHS slope " + f6(scan.rhs_slope)));
}

// ----------------------------------------------------------------------- bessel

void run_bessel(const ExperimentConfig& c, Results& r) {
    double worst = 0.0;
    Table ct{"closed_forms", {"m", "r", "value", "closed_form"}, {}};
    for (double x : exp_grid(1e-3, 1e3, 10)) {
        const double a = std::sqrt(2.0 / (kPi * x));
        const double ref[3] = {a * std::sin(x), a * (std::sin(x) / x - std::cos(x)),
                               a * ((3.0 / (x * x) - 1.0) * std::sin(x) - 3.0 * std::cos(x) / x)};
        for (int k = 0; k < 3; ++k) {
            const double m = 0.5 + k;
            const double v = bessel_j(m, x);
            ct.add({m, x, v, ref[k]});
            worst = std::max(worst, std::abs(v - ref[k]));
        }
    }
    r.tables.push_back(std::move(ct));

    const std::vector<double> grid = exp_grid(1.0, c.real("t_max"), static_cast<int>(c.integer("per_decade")));
    Table dt{"defect", {"n", "t", "defect"}, {}};
    Table st{"defect_fits", {"n", "slope", "c_large", "c_small", "exact"}, {}};
    std::vector<DefectReport> reports(c.integers("n_list").size());
    const std::vector<long> ns = c.integers("n_list");
    parallel_for(ns.size(), c.threads, [&](std::size_t i) { reports[i] = bessel_asymptotic_defect(static_cast<int>(ns[i]), grid); });
    double slope2 = NAN;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const DefectReport& d = reports[i];
        for (std::size_t j = 0; j < d.t.size(); ++j) dt.add({static_cast<int64_t>(ns[i]), d.t[j], d.defect[j]});
        st.add({static_cast<int64_t>(ns[i]), d.slope, d.c_large, d.c_small, static_cast<int64_t>(d.exact)});
        if (ns[i] == 2) slope2 = d.slope;
    }
    r.tables.push_back(std::move(dt));
    r.tables.push_back(std::move(st));
    r.metrics["closed_form_error"] = worst;
    r.checks.push_back(check("closed-forms", worst <= c.real("tolerance"),
                             "max |J - closed form| = " + f6(worst) + " on [1e-3, 1e3]"));
    if (!std::isnan(slope2))
        r.checks.push_back(check("defect-slope", slope2 <= c.real("slope_bound"),
                                 "n = 2 defect slope " + f6(slope2) + " on [1, " + f6(c.real("t_max")) + "]"));
    r.metrics["defect_slope_n2"] = std::isnan(slope2) ? nlohmann::json(nullptr) : nlohmann::json(slope2);
}

// ------------------------------------------------------------ radial sharpness

void run_radial(const ExperimentConfig& c, Results& r) {
    const int n = static_cast<int>(c.integer("n"));
    const double s = c.real("s"), q = c.real("q");
    const double alpha_star = q * (0.5 * n - s) - n;
    const double alpha = c.text("alpha") == "auto" ? alpha_star : std::stod(c.text("alpha"));
    if (!(alpha + n > 0.0)) throw ConfigError("alpha", "alpha + n must be positive");
    std::vector<double> lambdas;
    for (long e = c.integer("lambda_min_exp"); e <= c.integer("lambda_max_exp"); ++e)
        lambdas.push_back(std::ldexp(1.0, static_cast<int>(e)));
    const SharpnessReport rep = sharpness_scan(n, s, q, alpha, lambdas, c.threads);

    Table t{"exponents", {"lambda", "norm", "weighted_norm", "floor", "min_ratio"}, {}};
    for (const SharpnessRow& row : rep.rows) t.add({row.lambda, row.sobolev, row.weighted, row.floor, row.min_ratio});
    r.tables.push_back(std::move(t));
    const double tol = c.real("slope_tolerance");
    const double ws = n - (alpha + n) / q;
    const double margin = std::abs(rep.sobolev_slope - rep.weighted_slope);
    r.metrics["alpha"] = alpha;
    r.metrics["alpha_star"] = alpha_star;
    r.metrics["delta"] = rep.delta;
    r.metrics["c0"] = rep.c0;
    r.metrics["sobolev_slope"] = rep.sobolev_slope;
    r.metrics["weighted_slope"] = rep.weighted_slope;
    r.metrics["margin_large"] = rep.margin_large;
    r.metrics["margin_small"] = rep.margin_small;
    r.metrics["verdict"] = margin <= c.real("margin") ? "compatible" : "incompatible";
    r.checks.push_back(check("sobolev-slope", std::abs(rep.sobolev_slope - (0.5 * n + s)) <= tol,
                             "slope " + f6(rep.sobolev_slope) + " against " + f6(0.5 * n + s)));
    r.checks.push_back(check("weighted-slope", std::abs(rep.weighted_slope - ws) <= tol,
                             "slope " + f6(rep.weighted_slope) + " against " + f6(ws)));
    r.checks.push_back(check("floor", rep.floor_ok, "|B_0 f_lambda| >= c0 lambda^n on |x| < delta/lambda"));
    r.checks.push_back(check("equality-margin", margin <= c.real("margin"),
                             "|slope difference| " + f6(margin) + " at alpha = " + f6(alpha) + " (critical " +
                                 f6(alpha_star) + ")"));
}

const char* budget_parameter(const std::string& e) {
    if (e == "counterexample") return "precision";
    if (e == "kernel-decay") return "rel_tol";
    if (e == "convergence") return "points";
    return "experiment";
}

}  // namespace

bool Results::all_pass() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string version_string() { return "blab 1.0.0"; }

Results run_experiment(const ExperimentConfig& config) {
    Results r;
    r.config = config;
    r.budgets["precision"] = precision_name(config.precision);
    const std::string& e = config.experiment;
    try {
        if (e == "convergence") run_convergence(config, r);
        else if (e == "counterexample") run_counterexample(config, r);
        else if (e == "kernel-decay") run_kernel(config, r);
        else if (e == "vdc") run_vdc(config, r);
        else if (e == "measure-maximal") run_measure(config, r);
        else if (e == "lower-bound") run_lower_bound(config, r);
        else if (e == "bessel") run_bessel(config, r);
        else if (e == "radial-sharpness") run_radial(config, r);
        else throw ConfigError("experiment", "unknown experiment '" + e + "'");
    } catch (const PrecisionError& err) {
        throw ExperimentError(budget_parameter(e), std::string(err.what()) + " (magnitude " + f6(err.magnitude()) + ")");
    } catch (const BudgetExceeded& err) {
        throw ExperimentError(budget_parameter(e), err.what());
    }
    return r;
}

std::string csv_text(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            if (const double* d = std::get_if<double>(&row[i])) out += io::fmt(*d);
            else if (const int64_t* n = std::get_if<int64_t>(&row[i])) out += std::to_string(*n);
            else out += std::get<std::string>(row[i]);
        }
        out += "\n";
    }
    return out;
}

nlohmann::json manifest_json(const Results& r) {
    nlohmann::json j;
    j["experiment"] = r.config.experiment;
    j["config_hash"] = r.config.hash();
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : r.config.values) cfg[k] = v;
    cfg["seed"] = r.config.seed;
    cfg["precision"] = precision_name(r.config.precision);
    j["config"] = cfg;
    j["version"] = version_string();
    j["budgets"] = r.budgets;
    j["warnings"] = r.warnings;
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = checks;
    j["metrics"] = r.metrics;
    nlohmann::json files = nlohmann::json::array();
    for (const Table& t : r.tables) files.push_back(r.config.experiment + "-" + r.config.hash() + "-" + t.name + ".csv");
    j["files"] = files;
    j["pass"] = r.all_pass();
    return j;
}

std::string summary_text(const Results& r) {
    std::ostringstream os;
    os << r.config.experiment << " (" << r.config.hash() << ")\n";
    os << "seed " << r.config.seed << ", precision " << precision_name(r.config.precision) << "\n";
    for (const auto& [k, v] : r.config.values) os << "  " << k << " = " << v << "\n";
    for (const std::string& w : r.warnings) os << "WARNING " << w << "\n";
    for (const Check& c : r.checks) os << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    os << "overall: " << (r.all_pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

ReportFiles emit_report(const Results& r, const std::filesystem::path& dir) {
    if (r.tables.empty() || r.checks.empty()) throw InvalidArgument("emit_report: results are empty");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
    const std::string stem = r.config.experiment + "-" + r.config.hash();
    auto write = [](const std::filesystem::path& p, const std::string& text) {
        std::ofstream os(p, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot write " + p.string());
        os << text;
        if (!os) throw Error("write failed for " + p.string());
    };
    ReportFiles files;
    for (const Table& t : r.tables) {
        const auto p = dir / (stem + "-" + t.name + ".csv");
        write(p, csv_text(t));
        files.csv.push_back(p);
    }
    files.manifest = dir / (stem + ".manifest.json");
    write(files.manifest, manifest_json(r).dump(2) + "\n");
    files.summary = dir / (stem + ".summary.txt");
    write(files.summary, summary_text(r));
    return files;
}

}  // namespace blab::lab
