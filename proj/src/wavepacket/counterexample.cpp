#include "blab/wavepacket/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blab/core/error.hpp"
#include "blab/core/parallel.hpp"
#include "blab/dispersion/symbol.hpp"

namespace blab {

CounterexampleSpec default_counterexample(const BumpProfile& bump, double s, int K, double delta) {
    CounterexampleSpec spec;
    spec.s = s;
    spec.K = K;
    spec.delta = delta;
    const double cap = std::min(bump.v0(), delta / 4.0);
    int e = 0;
    std::frexp(cap, &e);  // cap = m 2^e, m in [1/2, 1)
    spec.v1 = std::ldexp(1.0, e - 1);
    if (spec.v1 >= cap) spec.v1 = std::ldexp(1.0, e - 2);
    return spec;
}

std::vector<double> packet_scales(double v1, int K) {
    std::vector<double> v;
    if (K >= 1) v.push_back(v1);
    for (int k = 2; k <= K; ++k) v.push_back(std::ldexp(1.0, -k) * v.back() * v.back());
    return v;
}

Counterexample build_counterexample(const BumpProfile& bump, const CounterexampleSpec& spec) {
    if (!(spec.s > 0.0 && spec.s < 0.25)) throw InvalidArgument("counterexample needs s in (0, 1/4)");
    if (spec.K < 1) throw InvalidArgument("counterexample needs K >= 1");
    if (!(spec.delta > 0.0)) throw InvalidArgument("counterexample needs delta > 0");
    if (!(spec.v1 > 0.0 && spec.v1 < std::min(bump.v0(), spec.delta / 4.0)))
        throw InvalidArgument("counterexample needs 0 < v1 < min(v0, delta/4)");
    Counterexample cx;
    cx.spec = spec;
    cx.v = packet_scales(spec.v1, spec.K);
    const double beta = 0.5 - 2.0 * spec.s;
    for (int k = 1; k <= spec.K; ++k) {
        const double n = packet_sobolev_norm(bump, cx.v[k - 1], spec.s);
        cx.norms.push_back(n);
        cx.certificate += n;
        cx.geometric_constant = std::max(cx.geometric_constant, n * std::exp2(k * beta));
    }
    const double q = std::exp2(-beta);
    cx.tail_bound = cx.geometric_constant * std::pow(q, spec.K + 1) / (1.0 - q);
    cx.series_bound = cx.geometric_constant * q / (1.0 - q);
    return cx;
}

WitnessReport divergence_witness(const BumpProfile& bump, const Counterexample& cx, std::span<const int> ks,
                                 std::span<const double> xs, const PacketOptions& opt, unsigned threads) {
    const double delta = cx.spec.delta;
    for (double x : xs)
        if (!(x > delta / 2 && x < delta)) throw InvalidArgument("witness points must lie in (delta/2, delta)");
    const int K = static_cast<int>(cx.v.size());
    for (int k : ks)
        if (k < 1 || k > K) throw InvalidArgument("witness level outside 1..K");

    WitnessReport rep;
    rep.floor = bump.c0() / 2.0;
    rep.rows.resize(ks.size() * xs.size());
    parallel_for(rep.rows.size(), threads, [&](std::size_t i) {
        WitnessRow& row = rep.rows[i];
        row.k = ks[i / xs.size()];
        row.x = xs[i % xs.size()];
        row.t = focusing_time(row.x, cx.v[row.k - 1]);
        const PacketValue main = packet_evolve(bump, cx.v[row.k - 1], row.x, row.t, opt);
        cplx lower{0.0, 0.0}, upper{0.0, 0.0};
        double lower_err = 0.0, upper_err = 0.0, bounds = 0.0;
        for (int j = 1; j < row.k; ++j) {
            const PacketValue p = packet_evolve(bump, cx.v[j - 1], row.x, row.t, opt);
            lower += p.value;
            lower_err += p.error;
        }
        for (int j = row.k + 1; j <= K; ++j) {
            try {
                const PacketValue p = packet_evolve(bump, cx.v[j - 1], row.x, row.t, opt);
                upper += p.value;
                upper_err += p.error;
            } catch (const PrecisionError&) {
                bounds += packet_vdc_bound(bump, cx.v[j - 1], row.x, row.t);
                ++row.bounded_terms;
            }
        }
        row.main = std::abs(main.value);
        row.modulus = std::abs(main.value + lower + upper);
        row.certified = row.modulus - main.error - lower_err - upper_err - bounds;
        row.lower_terms = std::abs(lower) + lower_err;
        row.upper_terms = std::abs(upper) + upper_err + bounds;
        row.pass = row.certified >= rep.floor;
    });

    for (std::size_t a = 0; a < ks.size(); ++a) {
        WitnessLevel lv;
        lv.k = ks[a];
        lv.min_certified = std::numeric_limits<double>::infinity();
        lv.t_min = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < xs.size(); ++b) {
            const WitnessRow& r = rep.rows[a * xs.size() + b];
            lv.min_certified = std::min(lv.min_certified, r.certified);
            lv.max_lower = std::max(lv.max_lower, r.lower_terms);
            lv.max_upper = std::max(lv.max_upper, r.upper_terms);
            lv.t_min = std::min(lv.t_min, r.t);
        }
        lv.pass = !xs.empty() && lv.min_certified >= rep.floor;
        rep.levels.push_back(lv);
    }
    // levels sorted by k; k0 is where the trailing run of passes starts
    std::vector<WitnessLevel> sorted = rep.levels;
    std::sort(sorted.begin(), sorted.end(), [](const WitnessLevel& a, const WitnessLevel& b) { return a.k < b.k; });
    rep.k0 = 0;
    for (auto it = sorted.rbegin(); it != sorted.rend() && it->pass; ++it) rep.k0 = it->k;
    rep.pass = !sorted.empty() && std::all_of(sorted.begin(), sorted.end(), [](const WitnessLevel& l) { return l.pass; });
    return rep;
}

}  // namespace blab
