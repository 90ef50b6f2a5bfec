#include <doctest.h>

#include <cmath>
#include <numbers>

#include "blab/core/error.hpp"
#include "blab/core/rng.hpp"
#include "blab/dispersion/symbol.hpp"
#include "blab/quad/gauss.hpp"
#include "blab/wavepacket/counterexample.hpp"

using namespace blab;

namespace {

constexpr double kPi = std::numbers::pi;

const BumpProfile& bump() {
    static const BumpProfile b;
    return b;
}

}  // namespace

TEST_CASE("bump profile") {
    const BumpProfile& b = bump();
    CHECK(b.gcheck(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(b.gcheck(1.0) == 0.0);
    CHECK(b.gcheck(-1.5) == 0.0);
    CHECK(b.integral() == doctest::Approx(2.3114546996).epsilon(1e-10));
    CHECK(std::abs(b.integral_quadrature() - b.integral()) < 1e-8);

    // independent high-precision values of g
    CHECK(b.g(0.0) == doctest::Approx(0.44399381616807942).epsilon(1e-13));
    CHECK(b.g(1.0) == doctest::Approx(0.40985913239034435353).epsilon(1e-12));
    CHECK(std::abs(b.g(5.5) - -0.025225398986785567584) < 1e-15);
    CHECK(std::abs(b.g(37.2) - 0.000022286565579839329459) < 1e-15);

    CounterRng rng(7);
    for (int i = 0; i < 200; ++i) {
        const double xi = rng.uniform(i, -399.0, 399.0);
        CHECK(std::abs(b.g(xi) - b.g_direct(xi)) < 1e-13);
        CHECK(std::abs(b.dg(xi) - (xi < 0 ? -1.0 : 1.0) * b.dg_direct(std::abs(xi))) < 1e-13);
        CHECK(b.g(xi) == b.g(-xi));
    }

    // Plancherel: int g^2 = 2 pi int g_check^2
    const double gg = quad::integrate([&](double xi) { return b.g(xi) * b.g(xi); }, -200.0, 200.0, 400);
    const double cc = quad::integrate([&](double x) { return b.gcheck(x) * b.gcheck(x); }, -1.0, 1.0, 64);
    CHECK(gg == doctest::Approx(2 * kPi * cc).epsilon(1e-10));
}

TEST_CASE("tail threshold") {
    const BumpProfile& b = bump();
    const double target = std::abs(b.integral()) / 100;
    CHECK(b.outer_mass(b.L()) <= target);
    CHECK(b.outer_mass(b.L() - 0.5) > target);
    CHECK(b.tail_margin() == doctest::Approx(target - b.outer_mass(b.L())));
    CHECK(b.L() == 22.0);
    CHECK(b.v0() == doctest::Approx(1.0 / 44));
    CHECK(b.c0() == doctest::Approx(b.integral() / (8 * kPi)));
    // the fitted envelope covers the table on the last decade
    for (double xi = 40.0; xi < 400.0; xi += 0.37)
        CHECK(std::abs(b.g(xi)) <= b.envelope_amplitude() * std::exp(-b.envelope_rate() * std::sqrt(xi)));
    CHECK(b.tail_bound() < 1e-6);
    const BumpProfile again;
    CHECK(again.L() == b.L());
    CHECK(again.tail_margin() == b.tail_margin());
    CHECK(again.tail_bound() == b.tail_bound());
    CHECK_THROWS_AS(BumpProfile(BumpOptions{-1.0, 400}), InvalidArgument);
}

TEST_CASE("packet support and spectrum") {
    const BumpProfile& b = bump();
    const double v = 0.02;
    const WavePacket p{&b, v};
    for (double x : {v, -v, 1.5 * v, 0.3}) CHECK(p.value(x) == cplx(0.0, 0.0));
    CHECK(std::abs(p.value(0.0)) == doctest::Approx(std::exp(-1.0)));
    // f_hat_v(xi) = int e^{-i x xi} f_v(x) dx against the table
    CounterRng rng(8);
    std::vector<double> nodes, weights;
    quad::composite(quad::gauss_legendre(20), -v, v, 200, nodes, weights);
    for (int i = 0; i < 100; ++i) {
        const double xi = rng.uniform(i, -1.0 / (v * v) - 60.0 / v, -1.0 / (v * v) + 60.0 / v);
        cplx direct{0.0, 0.0};
        for (std::size_t j = 0; j < nodes.size(); ++j) direct += weights[j] * std::polar(1.0, -nodes[j] * xi) * p.value(nodes[j]);
        CHECK(std::abs(direct - p.fhat(xi)) < 1e-11);
    }
}

TEST_CASE("packet evolution values") {
    const BumpProfile& b = bump();
    const double bound = 2.0 * b.abs_moment(0.0, b.range(), 0) / (2 * kPi) + b.tail_bound();
    for (double v : {0.3, 0.02, 0.001}) {
        const PacketValue z = packet_evolve(b, v, 0.0, 0.0);
        CHECK(std::abs(z.value - std::exp(-1.0)) < 1e-8);
        CHECK(z.error < 1e-8);
        // t = 0 reproduces f_v inside its support
        for (double u : {-0.7, 0.2, 0.55}) {
            const PacketValue q = packet_evolve(b, v, u * v, 0.0);
            CHECK(std::abs(q.value - WavePacket{&b, v}.value(u * v)) < 1e-8);
        }
    }
    CounterRng rng(9);
    for (int i = 0; i < 20; ++i) {
        const double v = rng.uniform(3 * i, 0.003, 0.05);
        const double x = rng.uniform(3 * i + 1, -0.5, 0.5);
        const double t = std::exp(rng.uniform(3 * i + 2, std::log(1e-8), 0.0));
        CHECK(std::abs(packet_evolve(b, v, x, t).value) <= bound);
    }
    // extended precision agrees where double is within budget
    PacketOptions ext;
    ext.precision = Precision::extended;
    for (double x : {0.13, 0.2}) {
        const double v = 1.0 / 64, t = focusing_time(x, v);
        const PacketValue a = packet_evolve(b, v, x, t), e = packet_evolve(b, v, x, t, ext);
        CHECK(std::abs(a.value - e.value) < 1e-9);
        CHECK(e.phase_error <= a.phase_error);
    }
}

TEST_CASE("focusing floor and delta") {
    const BumpProfile& b = bump();
    const double v0 = b.v0();
    const std::vector<double> vs{v0 / 2, v0 / 4, v0 / 8};
    CHECK(calibrate_delta(b, vs, 5) == 0.25);
    std::vector<double> xs;
    for (int i = 1; i <= 5; ++i) xs.push_back(0.25 * i / 6);
    const FloorCheck fc = lemma_floor(b, vs, xs);
    CHECK(fc.pass);
    CHECK(fc.floor == doctest::Approx(0.0919704).epsilon(1e-6));
    CHECK(fc.min_value > 0.3);
    // outside the lemma's v range the floor still holds at x = delta/2
    const PacketValue p = packet_evolve(b, 0.05, 0.125, focusing_time(0.125, 0.05));
    CHECK(std::abs(p.value) >= b.c0());
}

TEST_CASE("dispersion and low-frequency bounds") {
    const BumpProfile& b = bump();
    // the packet has left the test interval: B_t f_v(x) -> 0 as t -> 0
    const double v = b.v0() / 4;
    double prev = 1.0;
    for (double t : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const PacketValue p = packet_evolve(b, v, 0.2, t);
        CHECK(std::abs(p.value) <= std::max(prev, 1e-8));
        prev = std::abs(p.value);
    }
    CHECK(prev < 1e-8);

    const std::vector<double> vs{b.v0() / 2, b.v0() / 8};
    const std::vector<double> xs{0.15, 0.2};
    const std::vector<double> coarse{1e-6, 1e-4, 1e-2, 0.5};
    const BoundSuite s = packet_bound_suite(b, vs, coarse, xs, 0.2);
    CHECK(std::isfinite(s.dispersion_constant));
    CHECK(std::isfinite(s.low_frequency_constant));
    CHECK(s.evaluations == 20);
    const double r = std::abs(packet_evolve(b, 0.05, 0.08, 0.1).value) * std::sqrt(0.1) / 0.05;
    CHECK(std::isfinite(r));

    // H^s ratio at v = 2^-j is flat in j
    double lo = 1e300, hi = 0.0;
    for (int j = 3; j <= 8; ++j) {
        const double v = std::ldexp(1.0, -j);
        const double ratio = packet_sobolev_norm(b, v, 0.2) / std::pow(v, 0.1);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 1.05);
}

TEST_CASE("phase precision budget") {
    const BumpProfile& b = bump();
    const double v2 = std::ldexp(1.0, -14), v3 = std::ldexp(1.0, -31);
    const double x = 0.19;
    const double t2 = focusing_time(x, v2);
    try {
        packet_evolve(b, v3, x, t2);
        FAIL("expected a precision error");
    } catch (const PrecisionError& e) {
        CHECK(e.magnitude() == doctest::Approx(t2 / (v3 * v3 * v3)));
    }
    // the packet is far from stationary there, and the bound is tiny
    const double vb = packet_vdc_bound(b, v3, x, t2);
    CHECK(vb < 1e-6);
    // where both exist, the bound dominates the value
    const double t1 = focusing_time(x, 1.0 / 64);
    CHECK(std::abs(packet_evolve(b, v2, x, t1).value) <= packet_vdc_bound(b, v2, x, t1));
    CHECK(std::isinf(packet_vdc_bound(b, v3, x, focusing_time(x, v3))));
    CHECK_THROWS_AS(packet_evolve(b, 1.5, 0.1, 0.1), InvalidArgument);
}

TEST_CASE("counterexample construction") {
    CHECK(packet_scales(1.0 / 8, 3) == std::vector<double>{1.0 / 8, 1.0 / 256, std::ldexp(1.0, -19)});
    const BumpProfile& b = bump();
    const CounterexampleSpec spec = default_counterexample(b, 0.2, 3, 0.25);
    CHECK(spec.v1 == 1.0 / 64);
    const Counterexample cx = build_counterexample(b, spec);
    REQUIRE(cx.v.size() == 3);
    for (std::size_t k = 0; k < cx.v.size(); ++k) {
        CHECK(cx.v[k] <= std::ldexp(1.0, -static_cast<int>(k + 1)));
        if (k > 0) CHECK(cx.v[k] <= cx.v[k - 1] / 2);
        CHECK(cx.norms[k] <= cx.geometric_constant * std::exp2(-0.1 * (k + 1)) * (1 + 1e-12));
    }
    CHECK(std::isfinite(cx.certificate));
    CHECK(cx.certificate <= cx.series_bound);
    CHECK(cx.tail_bound < cx.series_bound);

    CounterexampleSpec bad = spec;
    bad.s = 0.25;
    CHECK_THROWS_AS(build_counterexample(b, bad), InvalidArgument);
    bad = spec;
    bad.v1 = 1.0 / 8;
    CHECK_THROWS_AS(build_counterexample(b, bad), InvalidArgument);
}

TEST_CASE("divergence witness") {
    const BumpProfile& b = bump();
    const Counterexample cx = build_counterexample(b, default_counterexample(b, 0.2, 3, 0.25));
    const std::vector<int> ks{1, 2, 3};
    const std::vector<double> xs{0.13, 0.19, 0.245};
    const WitnessReport r = divergence_witness(b, cx, ks, xs);
    CHECK(r.pass);
    CHECK(r.k0 == 1);
    CHECK(r.floor == doctest::Approx(b.c0() / 2));
    for (const WitnessRow& w : r.rows) {
        // single packet dominant
        CHECK(std::abs(w.modulus - w.main) <= 0.1 * w.main);
        CHECK(w.certified >= r.floor);
    }
    // j > k aggregate against v_{k+1} / sqrt(t_k)
    for (const WitnessLevel& lv : r.levels)
        if (lv.k < 3) CHECK(lv.max_upper <= cx.v[lv.k] / std::sqrt(lv.t_min));

    const WitnessReport empty = divergence_witness(b, cx, std::vector<int>{}, xs);
    CHECK(empty.rows.empty());
    CHECK(empty.levels.empty());
    CHECK_FALSE(empty.pass);
    CHECK_THROWS_AS(divergence_witness(b, cx, ks, std::vector<double>{0.1}), InvalidArgument);
}
