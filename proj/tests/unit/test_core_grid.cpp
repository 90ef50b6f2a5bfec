#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "blab/core/cutoff.hpp"
#include "blab/core/error.hpp"
#include "blab/core/grid.hpp"
#include "blab/core/io.hpp"
#include "blab/core/rng.hpp"
#include "blab/core/spectral_density.hpp"

using namespace blab;
constexpr double kPi = std::numbers::pi;

namespace {

SampledSignal random_signal(std::uint64_t seed, std::size_t n, double hw) {
    CounterRng rng(seed);
    std::vector<cplx> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = {rng.normal(2 * j), rng.normal(2 * j + 1)};
    return SampledSignal(Grid(hw, n), v);
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double m = 0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

// f_hat = 1 on (1,2), 0 elsewhere; |f_hat|^2 = 1/2 at the jumps
Spectrum indicator_12(const Grid& g) {
    std::vector<cplx> c(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double xi = g.xi(j), eps = 1e-6 * g.dxi();
        if (xi > 1.0 + eps && xi < 2.0 - eps) c[j] = 1.0;
        if (std::abs(xi - 1.0) <= eps || std::abs(xi - 2.0) <= eps) c[j] = std::sqrt(0.5);  // |f_hat|^2 = 1/2 at the jumps
    }
    return Spectrum(g, c);
}

}  // namespace

TEST_CASE("grid construction rules") {
    CHECK_THROWS_AS(Grid(1.0, 12), InvalidArgument);
    CHECK_THROWS_AS(Grid(1.0, 4), InvalidArgument);
    CHECK_THROWS_AS(Grid(0.0, 16), InvalidArgument);
    Grid g(kPi, 8);
    CHECK(g.x(0) == doctest::Approx(-kPi));
    CHECK(g.xi(0) == doctest::Approx(-4.0));
    CHECK(g.xi(4) == 0.0);
    std::vector<cplx> bad(8, cplx(1.0, 0.0));
    bad[3] = cplx(NAN, 0.0);
    CHECK_THROWS_AS(SampledSignal(g, bad), InvalidArgument);
}

TEST_CASE("transform of a constant") {
    Grid g(kPi, 8);
    Spectrum s = forward(SampledSignal(g, std::vector<cplx>(8, 1.0)));
    for (std::size_t j = 0; j < 8; ++j) {
        if (g.xi(j) == 0.0)
            CHECK(std::abs(s.coeffs()[j] - 2 * kPi) < 1e-14);
        else
            CHECK(std::abs(s.coeffs()[j]) < 1e-14);
    }
}

TEST_CASE("single mode matches direct Riemann sum") {
    Grid g(kPi, 8);
    std::vector<cplx> v(8);
    for (std::size_t j = 0; j < 8; ++j) v[j] = std::polar(1.0, g.x(j));
    Spectrum s = forward(SampledSignal(g, v));
    for (std::size_t k = 0; k < 8; ++k) {
        cplx direct = 0;
        for (std::size_t j = 0; j < 8; ++j) direct += g.dx() * std::polar(1.0, -g.x(j) * g.xi(k)) * v[j];
        CHECK(std::abs(s.coeffs()[k] - direct) < 1e-13);
    }
    for (std::size_t k = 0; k < 8; ++k) {
        const cplx expect = g.xi(k) == 1.0 ? cplx(2 * kPi) : cplx(0.0);
        CHECK(std::abs(s.coeffs()[k] - expect) < 1e-13);
    }
}

TEST_CASE("roundtrip and Parseval on 100 random signals") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = std::size_t(8) << (seed % 8);
        const double hw = 0.5 + static_cast<double>(seed);
        SampledSignal f = random_signal(seed, n, hw);
        Spectrum s = forward(f);
        SampledSignal back = inverse(s);
        double scale = 0;
        for (auto z : f.values()) scale = std::max(scale, std::abs(z));
        CHECK(max_abs_diff(back.values(), f.values()) <= 1e-12 * scale);
        CHECK(std::abs(s.l2_norm() - f.l2_norm()) <= 1e-10 * f.l2_norm());
    }
}

TEST_CASE("sobolev norm of an indicator") {
    // int_1^2 xi^{1/2} dxi = (2^{3/2} - 1) / (3/2)
    const double expect = std::sqrt((std::pow(2.0, 1.5) - 1.0) / 1.5);
    CHECK(expect == doctest::Approx(1.10406).epsilon(1e-5));
    Grid g(kPi * 4096, 1 << 15);
    const double got = sobolev_norm(indicator_12(g), {0.25, true});
    CHECK(std::abs(got - expect) < 1e-7);

    // quadrature oracle on the continuous indicator
    SpectralDensity ind{[](double) { return cplx(1.0); }, 1.0, 2.0, 1.0};
    CHECK(std::abs(sobolev_norm(ind, {0.25, true}) - expect) < 1e-12);
}

TEST_CASE("sobolev norm identities") {
    SampledSignal f = random_signal(3, 256, 10.0);
    Spectrum s = forward(f);
    double direct = 0;
    for (auto z : s.coeffs()) direct += std::norm(z) * s.grid().dxi();
    CHECK(sobolev_norm(s, {0.0, false}) == doctest::Approx(std::sqrt(direct)).epsilon(1e-10));
    CHECK(sobolev_norm(s, {0.0, true}) == doctest::Approx(std::sqrt(direct)).epsilon(1e-10));

    std::vector<cplx> tripled(s.coeffs().begin(), s.coeffs().end());
    for (auto& z : tripled) z *= 3.0;
    Spectrum s3(s.grid(), tripled);
    CHECK(sobolev_norm(s3, {0.7, false}) == doctest::Approx(3 * sobolev_norm(s, {0.7, false})).epsilon(1e-13));

    CHECK_THROWS_AS(sobolev_norm(s, {-0.25, true}), InvalidArgument);
    std::vector<cplx> zero_mean(s.coeffs().begin(), s.coeffs().end());
    zero_mean[s.grid().size() / 2] = 0.0;
    CHECK_NOTHROW(sobolev_norm(Spectrum(s.grid(), zero_mean), {-0.25, true}));
}

TEST_CASE("bump partition") {
    CHECK(smooth_cutoff(0.0) == 1.0);
    CHECK(smooth_cutoff(1.0) == 1.0);
    CHECK(smooth_cutoff(-1.0) == 1.0);
    CHECK(smooth_cutoff(2.0) == 0.0);
    CHECK(smooth_cutoff(1.5) == doctest::Approx(0.5));
    double prev = 1.0;
    for (double x = 1.0; x <= 2.0; x += 1e-3) {
        CHECK(smooth_cutoff(x) <= prev);
        prev = smooth_cutoff(x);
    }
    CHECK(annulus_bump(1.5) == 1.0);
    CHECK(annulus_bump(1.0) == 0.0);
    CHECK(annulus_bump(2.0) == 0.0);
    CHECK(annulus_bump(1.125) == doctest::Approx(0.5));
}

TEST_CASE("band split examples") {
    Grid g(kPi * 8, 256);
    std::vector<cplx> lowonly(g.size()), highonly(g.size()), ones(g.size(), 1.0);
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (std::abs(g.xi(j)) <= 1.0) lowonly[j] = {1.0, -2.0};
        if (std::abs(g.xi(j)) >= 2.0) highonly[j] = {0.5, 3.0};
    }
    auto [l1, h1] = band_split(Spectrum(g, lowonly));
    for (auto z : h1.coeffs()) CHECK(z == cplx(0.0));
    auto [l2, h2] = band_split(Spectrum(g, highonly));
    for (auto z : l2.coeffs()) CHECK(z == cplx(0.0));
    auto [l3, h3] = band_split(Spectrum(g, ones));
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(l3.coeffs()[j] + h3.coeffs()[j] == cplx(1.0));
}

TEST_CASE("band split is linear") {
    SampledSignal f1 = random_signal(11, 512, 20.0), f2 = random_signal(12, 512, 20.0);
    Spectrum a = forward(f1), b = forward(f2);
    const cplx ca(0.3, -1.2), cb(2.0, 0.5);
    std::vector<cplx> mix(512);
    for (std::size_t j = 0; j < 512; ++j) mix[j] = ca * a.coeffs()[j] + cb * b.coeffs()[j];
    auto [lm, hm] = band_split(Spectrum(a.grid(), mix));
    auto [la, ha] = band_split(a);
    auto [lb, hb] = band_split(b);
    for (std::size_t j = 0; j < 512; ++j) {
        const double scale = std::abs(mix[j]) + std::abs(a.coeffs()[j]) + std::abs(b.coeffs()[j]);
        CHECK(std::abs(lm.coeffs()[j] - (ca * la.coeffs()[j] + cb * lb.coeffs()[j])) <= 1e-14 * scale);
        CHECK(std::abs(hm.coeffs()[j] - (ca * ha.coeffs()[j] + cb * hb.coeffs()[j])) <= 1e-14 * scale);
    }
}

TEST_CASE("CSV and JSON round trips keep 17 digits") {
    SampledSignal f = random_signal(5, 64, 3.0);
    std::stringstream ss;
    io::write_csv(ss, f);
    SampledSignal g = io::read_signal_csv(ss);
    CHECK(g.grid().size() == 64);
    CHECK(max_abs_diff(g.values(), f.values()) == 0.0);

    Spectrum s = forward(f);
    std::stringstream ss2;
    io::write_csv(ss2, s);
    Spectrum s2 = io::read_spectrum_csv(ss2);
    CHECK(s2.grid().half_width() == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(max_abs_diff(s2.coeffs(), s.coeffs()) == 0.0);

    auto j = io::to_json(s);
    Spectrum s3 = io::spectrum_from_json(nlohmann::json::parse(j.dump()));
    CHECK(max_abs_diff(s3.coeffs(), s.coeffs()) == 0.0);
    CHECK_THROWS_AS(io::signal_from_json(j), InvalidArgument);
    CHECK(io::fmt(0.1) == "0.10000000000000001");
}

TEST_CASE("counter rng is position addressable") {
    CounterRng a(42), b(42), c(43);
    CHECK(a.uniform(17) == b.uniform(17));
    CHECK(a.uniform(17) != c.uniform(17));
    double mean = 0;
    for (int i = 0; i < 20000; ++i) mean += a.uniform(i);
    CHECK(mean / 20000 == doctest::Approx(0.5).epsilon(0.02));
    CHECK(a.substream(1).uniform(0) != a.substream(2).uniform(0));
}
