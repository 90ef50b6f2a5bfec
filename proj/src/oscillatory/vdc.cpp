#include "blab/oscillatory/vdc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blab/core/error.hpp"
#include "blab/core/parallel.hpp"
#include "blab/core/rng.hpp"
#include "blab/quad/oscillatory.hpp"

namespace blab {

double total_variation(const std::function<double(double)>& f, const std::function<double(double)>& df, double a,
                       double b, std::size_t samples) {
    if (!(b > a)) return 0.0;
    samples = std::max<std::size_t>(samples, 2);
    std::vector<double> ext = {a};
    double xl = a, dl = df(a);
    for (std::size_t i = 1; i < samples; ++i) {
        const double xr = a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double dr = df(xr);
        if ((dl < 0.0 && dr > 0.0) || (dl > 0.0 && dr < 0.0)) {
            double lo = xl, hi = xr, flo = dl;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
                const double m = 0.5 * (lo + hi);
                const double fm = df(m);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = m;
                    flo = fm;
                } else {
                    hi = m;
                }
            }
            ext.push_back(0.5 * (lo + hi));
        }
        xl = xr;
        dl = dr;
    }
    ext.push_back(b);
    double tv = 0.0;
    for (std::size_t i = 1; i < ext.size(); ++i) tv += std::abs(f(ext[i]) - f(ext[i - 1]));
    return tv;
}

VdcResult vdc_check(const VdcInstance& inst, std::size_t samples) {
    if (inst.order != 1 && inst.order != 2) throw InvalidArgument("van der Corput order must be 1 or 2");
    if (!(inst.b > inst.a)) throw InvalidArgument("van der Corput interval must have a < b");
    if (!(inst.gamma > 0.0)) throw InvalidArgument("van der Corput gamma must be positive");
    VdcResult r;
    r.label = inst.label;
    r.order = inst.order;

    samples = std::max<std::size_t>(samples, 3);
    const double slack = 1.0 - 1e-12;
    int trend = 0;
    double prev = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = inst.a + (inst.b - inst.a) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double d = inst.order == 1 ? inst.dphase(x) : inst.d2phase(x);
        if (std::abs(d) < inst.gamma * slack) {
            r.skipped = true;
            r.reason = "derivative bound fails at x = " + std::to_string(x);
            return r;
        }
        if (inst.order == 1 && i > 0) {
            const int s = d > prev ? 1 : (d < prev ? -1 : 0);
            if (s != 0 && trend != 0 && s != trend) {
                r.skipped = true;
                r.reason = "phase derivative not monotone near x = " + std::to_string(x);
                return r;
            }
            if (s != 0) trend = s;
        }
        prev = d;
    }

    quad::OscProblem p{[&](double x) { return quad::cplx(inst.amp(x), 0.0); }, inst.phase, inst.dphase};
    quad::OscOptions o;
    o.rel_tol = 1e-13;
    r.integral = std::abs(quad::integrate_oscillatory(p, inst.a, inst.b, o).value);
    r.denominator = std::abs(inst.amp(inst.b)) + total_variation(inst.amp, inst.damp, inst.a, inst.b, samples);
    if (r.denominator == 0.0) {
        r.ratio = 0.0;
        return r;
    }
    r.ratio = r.integral * std::pow(inst.gamma, 1.0 / inst.order) / r.denominator;
    return r;
}

VdcInstance vdc_linear(double lambda) {
    VdcInstance v;
    v.phase = [lambda](double x) { return lambda * x; };
    v.dphase = [lambda](double) { return lambda; };
    v.d2phase = [](double) { return 0.0; };
    v.amp = [](double) { return 1.0; };
    v.damp = [](double) { return 0.0; };
    v.a = 0.0;
    v.b = 1.0;
    v.gamma = std::abs(lambda);
    v.order = 1;
    v.label = "linear";
    return v;
}

VdcInstance vdc_quadratic(double lambda) {
    VdcInstance v;
    v.phase = [lambda](double x) { return lambda * x * x; };
    v.dphase = [lambda](double x) { return 2.0 * lambda * x; };
    v.d2phase = [lambda](double) { return 2.0 * lambda; };
    v.amp = [](double) { return 1.0; };
    v.damp = [](double) { return 0.0; };
    v.a = 1.0;
    v.b = 2.0;
    v.gamma = 2.0 * std::abs(lambda);
    v.order = 2;
    v.label = "quadratic";
    return v;
}

VdcInstance random_vdc_instance(std::uint64_t seed, int order, std::size_t index) {
    CounterRng rng = CounterRng(seed).substream(static_cast<std::uint64_t>(order)).substream(index);
    VdcInstance v;
    v.order = order;
    v.label = "order" + std::to_string(order) + "-" + std::to_string(index);
    const double len = rng.next_uniform(0.5, 3.0);
    const double lambda = std::exp(rng.next_uniform(0.0, std::log(100.0)));
    const double sign = rng.next_uniform() < 0.5 ? -1.0 : 1.0;

    if (order == 1) {
        // Phi = sign (lambda x + mu x^3) on [a, a + len], a >= 0: Phi' monotone
        const double a = rng.next_uniform(0.0, 1.0);
        const double mu = rng.next_uniform(0.0, 5.0);
        v.a = a;
        v.b = a + len;
        v.phase = [=](double x) { return sign * (lambda * x + mu * x * x * x); };
        v.dphase = [=](double x) { return sign * (lambda + 3.0 * mu * x * x); };
        v.d2phase = [=](double x) { return sign * 6.0 * mu * x; };
        v.gamma = lambda + 3.0 * mu * a * a;
    } else {
        // Phi = sign (lambda (x-c)^2 + mu (x-c)^3) with the stationary point c inside
        const double a = rng.next_uniform(-1.0, 1.0);
        const double c = a + len * rng.next_uniform(0.1, 0.9);
        const double mu = rng.next_uniform(0.0, lambda / (6.0 * len));
        v.a = a;
        v.b = a + len;
        v.phase = [=](double x) { return sign * (lambda * (x - c) * (x - c) + mu * (x - c) * (x - c) * (x - c)); };
        v.dphase = [=](double x) { return sign * (2.0 * lambda * (x - c) + 3.0 * mu * (x - c) * (x - c)); };
        v.d2phase = [=](double x) { return sign * (2.0 * lambda + 6.0 * mu * (x - c)); };
        v.gamma = 2.0 * lambda + 6.0 * mu * (a - c);
    }

    // psi = c0 + c1 cos(w x + p) + c2 exp(-((x - m) / s)^2)
    const double c0 = rng.next_uniform(-1.0, 1.0);
    const double c1 = rng.next_uniform(-1.0, 1.0);
    const double w = rng.next_uniform(0.0, 6.0);
    const double ph = rng.next_uniform(0.0, 2.0 * M_PI);
    const double c2 = rng.next_uniform(-1.0, 1.0);
    const double m = rng.next_uniform(v.a, v.b);
    const double s = rng.next_uniform(0.1, 1.0);
    v.amp = [=](double x) { return c0 + c1 * std::cos(w * x + ph) + c2 * std::exp(-((x - m) / s) * ((x - m) / s)); };
    v.damp = [=](double x) {
        const double u = (x - m) / s;
        return -c1 * w * std::sin(w * x + ph) - 2.0 * c2 * u / s * std::exp(-u * u);
    };
    return v;
}

VdcSuite vdc_suite(std::uint64_t seed, std::size_t per_order, unsigned threads) {
    VdcSuite suite;
    suite.results.resize(2 * per_order);
    parallel_for(suite.results.size(), threads, [&](std::size_t i) {
        const int order = i < per_order ? 1 : 2;
        suite.results[i] = vdc_check(random_vdc_instance(seed, order, i % per_order));
    });
    for (const VdcResult& r : suite.results) {
        if (r.skipped) {
            ++suite.skipped;
            continue;
        }
        double& c = r.order == 1 ? suite.constant_order1 : suite.constant_order2;
        c = std::max(c, r.ratio);
    }
    suite.constant = std::max(suite.constant_order1, suite.constant_order2);
    return suite;
}

}  // namespace blab
