#include <doctest.h>

#include <cmath>
#include <numbers>

#include "blab/core/cutoff.hpp"
#include "blab/core/error.hpp"
#include "blab/core/fit.hpp"
#include "blab/quad/gauss.hpp"
#include "blab/radial/bessel.hpp"
#include "blab/radial/hankel.hpp"

using namespace blab;

namespace {

constexpr double kPi = std::numbers::pi;

double j_half(double x) { return std::sqrt(2.0 / (kPi * x)) * std::sin(x); }
double j_three_halves(double x) { return std::sqrt(2.0 / (kPi * x)) * (std::sin(x) / x - std::cos(x)); }
double j_five_halves(double x) {
    return std::sqrt(2.0 / (kPi * x)) * ((3.0 / (x * x) - 1.0) * std::sin(x) - 3.0 * std::cos(x) / x);
}

RadialProfile annulus(int n, double lambda) {
    return make_radial_profile(n, log_grid(lambda / 64.0, 2.0 * lambda, 32),
                               [lambda](double r) { return cplx(annulus_bump(r / lambda), 0.0); }, lambda, 2.0 * lambda,
                               lambda / 16.0);
}

}  // namespace

TEST_CASE("half-integer orders match the elementary closed forms") {
    double worst = 0.0;
    for (double x : log_grid(1e-3, 1e3, 50)) {
        worst = std::max(worst, std::abs(bessel_j(0.5, x) - j_half(x)));
        worst = std::max(worst, std::abs(bessel_j(1.5, x) - j_three_halves(x)));
        worst = std::max(worst, std::abs(bessel_j(2.5, x) - j_five_halves(x)));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("reference values from extended precision") {
    struct Ref {
        double m, x, v;
    };
    const Ref refs[] = {{0.0, 100.0, 0.019985850304223122424},  {0.0, 0.5, 0.93846980724081290423},
                        {0.0, 30.0, -0.086367983581040211336}, {1.0, 17.5, -0.16341996942575490589},
                        {0.5, kPi / 2, 0.63661977236758134308}, {2.5, 40.0, -0.08751431140932354553},
                        {0.25, 7.0, 0.26799998395276246212}};
    for (const Ref& r : refs) CHECK(bessel_j(r.m, r.x) == doctest::Approx(r.v).epsilon(1e-12));
}

TEST_CASE("branches agree across their seams") {
    for (double m : {0.0, 0.5, 1.0, 2.5}) {
        const double s1 = bessel_series_seam();
        CHECK(std::abs(bessel_j_series(m, s1) - bessel_j_integral(m, s1)) <= 1e-12);
        const double s2 = bessel_asymptotic_seam(m);
        CHECK(std::abs(bessel_j_integral(m, s2) - bessel_j_asymptotic(m, s2)) <= 1e-12);
        const HankelPQ pq = hankel_pq(m, s2 * 3);
        CHECK(std::isfinite(pq.P));
        CHECK(std::isfinite(pq.Q));
    }
}

TEST_CASE("small-argument growth |J_m(r)| <= C r^m") {
    for (double m : {0.0, 0.5, 1.0, 2.5}) {
        double c = 0.0;
        for (double r : log_grid(1e-6, 1.0, 20)) c = std::max(c, std::abs(bessel_j(m, r)) / std::pow(r, m));
        // the series leading coefficient is 1 / (2^m Gamma(m+1))
        CHECK(c <= 1.0 / (std::pow(2.0, m) * std::tgamma(m + 1.0)) * (1.0 + 1e-9));
    }
}

TEST_CASE("asymptotic defect of the Bessel pair") {
    const std::vector<double> grid = log_grid(1e-2, 1e3, 200);
    SUBCASE("n = 2 decays like 1/t") {
        const DefectReport d = bessel_asymptotic_defect(2, grid);
        CHECK(d.c_large <= 1.0);
        CHECK(d.slope <= -0.9);
        CHECK_FALSE(d.exact);
        const double t[] = {100.0, 0.5};
        const DefectReport p = bessel_asymptotic_defect(2, t);
        CHECK(p.defect[0] == doctest::Approx(0.000966602218520579788).epsilon(1e-8));
        CHECK(p.defect[1] == doctest::Approx(0.10201147045015556188).epsilon(1e-8));
        CHECK(p.defect[0] <= 1.0 / 100.0);
    }
    SUBCASE("n = 3 is exact") {
        const DefectReport d = bessel_asymptotic_defect(3, grid);
        CHECK(d.exact);
        CHECK(std::isinf(d.slope));
    }
    SUBCASE("n = 4 and 5 decay like 1/t") {
        for (int n : {4, 5}) CHECK(bessel_asymptotic_defect(n, grid).slope <= -0.9);
    }
}

TEST_CASE("radial evolution") {
    const RadialProfile ind =
        make_radial_profile(2, log_grid(0.1, 2.0, 16), [](double) { return cplx(1.0, 0.0); }, 1.0, 2.0, 1.0);

    SUBCASE("indicator of the annulus at the origin") {
        CHECK(radial_value(ind, 0.0, 0.0).real() == doctest::Approx(3.0 / (4.0 * kPi)).epsilon(1e-12));
        CHECK(std::abs(radial_value(ind, 0.0, 0.0).imag()) <= 1e-14);
    }

    SUBCASE("u = 0 is rejected above dimension 2") {
        const RadialProfile p3 = annulus(3, 1.0);
        CHECK_THROWS_AS(radial_value(p3, 0.0, 0.5), InvalidArgument);
    }

    SUBCASE("n = 3 matches the sine-kernel oracle") {
        const RadialProfile p3 = annulus(3, 2.0);
        double worst = 0.0;
        for (double u : {0.3, 5.0, 40.0, 300.0})
            for (double t : {0.0, 0.7, -3.0}) {
                const cplx v = radial_value(p3, u, t);
                auto part = [&](bool im) {
                    return quad::integrate(
                        [&](double r) {
                            const double ph = t * r * std::sqrt(1 + r * r);
                            return std::sin(r * u) * r * annulus_bump(r / 2) * (im ? std::sin(ph) : std::cos(ph));
                        },
                        2.0, 4.0, 2000, 20);
                };
                const cplx o = cplx(part(false), part(true)) / (2.0 * kPi * kPi * u);
                worst = std::max(worst, std::abs(v - o));
            }
        CHECK(worst <= 1e-8);
    }

    SUBCASE("linear in the profile") {
        const RadialProfile a = annulus(2, 1.0);
        const RadialProfile b = make_radial_profile(
            2, log_grid(0.1, 2.0, 16), [](double r) { return cplx(annulus_bump(r), 2.0 * annulus_bump(r)); }, 1.0, 2.0,
            1.0 / 16.0);
        for (double u : {0.0, 0.7, 30.0}) {
            const cplx va = radial_value(a, u, 0.4), vb = radial_value(b, u, 0.4);
            CHECK(std::abs(vb - cplx(1.0, 2.0) * va) <= 1e-12);
        }
    }

    SUBCASE("sampled profiles follow the exact one") {
        std::vector<double> g = log_grid(0.5, 2.5, 400);
        std::vector<cplx> s;
        for (double r : g) s.push_back(cplx(annulus_bump(r), 0.0));
        const RadialProfile ps = radial_profile_from_samples(2, g, s);
        const RadialProfile pe = annulus(2, 1.0);
        CHECK(std::abs(radial_value(ps, 2.0, 0.3) - radial_value(pe, 2.0, 0.3)) <= 1e-5);
    }

    SUBCASE("malformed grids") {
        CHECK_THROWS_AS(make_radial_profile(2, {1.0, 0.5}, [](double) { return cplx(1.0); }, 0.5, 1.0, 0.1),
                        InvalidArgument);
        CHECK_THROWS_AS(make_radial_profile(1, {1.0, 2.0}, [](double) { return cplx(1.0); }, 1.0, 2.0, 0.1),
                        InvalidArgument);
    }
}

TEST_CASE("sphere area") {
    CHECK(sphere_area(2) == doctest::Approx(2.0 * kPi));
    CHECK(sphere_area(3) == doctest::Approx(4.0 * kPi));
}

TEST_CASE("weighted maximal norm") {
    const RadialProfile pa = annulus(2, 1.0);
    WeightedNormOptions opt;
    opt.threads = 2;

    SUBCASE("zero profile") {
        const RadialProfile z =
            make_radial_profile(2, log_grid(0.1, 2.0, 8), [](double) { return cplx(0.0); }, 1.0, 2.0, 0.5);
        const double t0[] = {0.0};
        CHECK(weighted_maximal_norm(z, 2.0, 0.0, t0, opt).value == 0.0);
    }

    SUBCASE("Plancherel at t = 0 without weight") {
        const double t0[] = {0.0};
        const WeightedNorm w = weighted_maximal_norm(pa, 2.0, 0.0, t0, opt);
        const double l2 = std::sqrt(std::pow(2.0 * kPi, -2.0) * sphere_area(2) *
                                    quad::integrate(
                                        [](double r) {
                                            const double b = annulus_bump(r);
                                            return b * b * r;
                                        },
                                        1.0, 2.0, 64, 20));
        CHECK(w.tail_certified);
        CHECK(w.value == doctest::Approx(l2).epsilon(1e-8));
    }

    SUBCASE("homogeneous of degree one") {
        const RadialProfile p3 = make_radial_profile(
            2, log_grid(1.0 / 64, 2.0, 32), [](double r) { return cplx(3.0 * annulus_bump(r), 0.0); }, 1.0, 2.0,
            1.0 / 16);
        const double ts[] = {-0.1, 0.0, 0.1};
        const double a = weighted_maximal_norm(pa, 2.0, -0.5, ts, opt).value;
        const double b = weighted_maximal_norm(p3, 2.0, -0.5, ts, opt).value;
        CHECK(b == doctest::Approx(3.0 * a).epsilon(1e-10));
    }

    SUBCASE("larger time grids give larger norms") {
        const double small[] = {-0.1, 0.0, 0.1};
        const double large[] = {-0.5, -0.1, 0.0, 0.1, 0.5};
        CHECK(weighted_maximal_norm(pa, 2.0, -0.5, large, opt).value >=
              weighted_maximal_norm(pa, 2.0, -0.5, small, opt).value * (1.0 - 1e-12));
    }

    SUBCASE("argument checks") {
        const double asym[] = {0.0, 0.1};
        const double t0[] = {0.0};
        CHECK_THROWS_AS(weighted_maximal_norm(pa, 2.0, 0.0, asym, opt), InvalidArgument);
        CHECK_THROWS_AS(weighted_maximal_norm(pa, 1.5, 0.0, t0, opt), InvalidArgument);
        CHECK_THROWS_AS(weighted_maximal_norm(pa, 4.5, 0.0, t0, opt), InvalidArgument);
        CHECK_THROWS_AS(weighted_maximal_norm(pa, 2.0, -2.0, t0, opt), InvalidArgument);
    }

    SUBCASE("symmetric time grid") {
        const std::vector<double> g = symmetric_time_grid(1e-2, 1.0, 2);
        CHECK(g.size() == 11);
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == -g[g.size() - 1 - i]);
    }
}

TEST_CASE("sharpness scan") {
    const std::vector<double> lambdas = {1.0 / 32, 1.0 / 8, 0.5, 2.0, 8.0, 32.0};

    SUBCASE("critical weight") {
        const SharpnessReport r = sharpness_scan(2, 0.25, 2.0, -0.5, lambdas, 8);
        CHECK(r.alpha_star == doctest::Approx(-0.5));
        CHECK(r.sobolev_slope == doctest::Approx(1.25).epsilon(1e-6));
        CHECK(r.weighted_slope == doctest::Approx(1.25).epsilon(1e-6));
        CHECK(r.compatible);
        CHECK(r.floor_ok);
        CHECK(annulus_transform(2, r.delta) == doctest::Approx(0.5).epsilon(1e-10));
    }

    SUBCASE("off-critical weight is incompatible") {
        const SharpnessReport r = sharpness_scan(2, 0.25, 2.0, 0.0, lambdas, 8);
        CHECK(r.weighted_slope == doctest::Approx(1.0).epsilon(1e-6));
        CHECK_FALSE(r.compatible);
        CHECK(r.margin_large == doctest::Approx(0.25).epsilon(1e-5));
    }

    SUBCASE("lambda must be dyadic and span three decades") {
        const double short_range[] = {1.0, 2.0, 4.0};
        const double odd[] = {0.001, 1.0, 3.0};
        CHECK_THROWS_AS(sharpness_scan(2, 0.25, 2.0, -0.5, short_range, 1), InvalidArgument);
        CHECK_THROWS_AS(sharpness_scan(2, 0.25, 2.0, -0.5, odd, 1), InvalidArgument);
    }
}
