#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "blab/simd/kernels.hpp"

using namespace blab::simd;

namespace {

struct Data {
    std::vector<double> phase, amp_r, w, x;
    std::vector<cplx> c;
};

Data make(std::size_t n, double phase_scale, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Data d;
    for (std::size_t j = 0; j < n; ++j) {
        d.phase.push_back(phase_scale * u(gen));
        d.amp_r.push_back(1.0 + 0.5 * u(gen));
        d.w.push_back(0.5 + 0.5 * u(gen) * u(gen));
        d.x.push_back(u(gen));
        d.c.emplace_back(u(gen), u(gen));
    }
    return d;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("avx2 path is available on this machine") {
    // not a hard requirement, but the equivalence tests below are vacuous otherwise
    MESSAGE("detected isa: " << isa_name(detected_isa()));
    CHECK(active_isa() == detected_isa());
}

TEST_CASE("sincos matches libm across reduction range") {
    if (!avx2::compiled()) return;
    for (double scale : {1.0, 10.0, 1e3, 1e6, 1e9, 1e12}) {
        const Data d = make(1003, scale, 7);
        std::vector<double> s1(d.phase.size()), c1(d.phase.size()), s2(d.phase.size()), c2(d.phase.size());
        avx2::sincos_array(d.phase, s1, c1);
        scalar::sincos_array(d.phase, s2, c2);
        double worst = 0;
        for (std::size_t j = 0; j < d.phase.size(); ++j)
            worst = std::max({worst, std::abs(s1[j] - s2[j]), std::abs(c1[j] - c2[j])});
        // absolute error grows with |theta| * eps through the reduction
        CHECK(worst <= 4e-16 + 2.3e-16 * scale * 1e-6);
    }
}

TEST_CASE("sincos exact quadrant points") {
    if (!avx2::compiled()) return;
    std::vector<double> t = {0.0, M_PI / 2, M_PI, 3 * M_PI / 2, -M_PI / 2, 2 * M_PI, 1e-300, -0.0};
    std::vector<double> s(t.size()), c(t.size());
    avx2::sincos_array(t, s, c);
    for (std::size_t j = 0; j < t.size(); ++j) {
        CHECK(std::abs(s[j] - std::sin(t[j])) <= 1e-16);
        CHECK(std::abs(c[j] - std::cos(t[j])) <= 1e-16);
    }
}

TEST_CASE("oscillatory_sum scalar vs avx2") {
    if (!avx2::compiled()) return;
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 1000u, 4099u}) {
        const Data d = make(n, 300.0, 11 + n);
        const cplx a = avx2::oscillatory_sum(d.phase, d.c);
        const cplx b = scalar::oscillatory_sum(d.phase, d.c);
        double mass = 0;
        for (auto& v : d.c) mass += std::abs(v);
        CHECK(std::abs(a - b) <= 1e-15 * std::max(mass, 1.0));
    }
}

TEST_CASE("apply_phase scalar vs avx2") {
    if (!avx2::compiled()) return;
    const Data d = make(1031, 50.0, 3);
    std::vector<cplx> a = d.c, b = d.c;
    avx2::apply_phase(a, d.phase, d.amp_r);
    scalar::apply_phase(b, d.phase, d.amp_r);
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(rel(a[j], b[j]) <= 1e-14);
}

TEST_CASE("weighted_norm_sq scalar vs avx2") {
    if (!avx2::compiled()) return;
    const Data d = make(2051, 1.0, 5);
    const double a = avx2::weighted_norm_sq(d.c, d.w);
    const double b = scalar::weighted_norm_sq(d.c, d.w);
    CHECK(std::abs(a - b) <= 1e-14 * b);
    double direct = 0;
    for (std::size_t j = 0; j < d.c.size(); ++j) direct += d.w[j] * std::norm(d.c[j]);
    CHECK(std::abs(b - direct) <= 1e-13 * direct);
}

TEST_CASE("pair_energy scalar vs avx2 and brute force") {
    if (!avx2::compiled()) return;
    for (double alpha : {0.0, 0.25, 0.5, 0.6309, 1.0}) {
        const Data d = make(523, 1.0, 9);
        std::vector<double> w(d.w);
        double tot = 0;
        for (double v : w) tot += v;
        for (double& v : w) v /= tot;
        const double a = avx2::pair_energy(d.x, w, alpha);
        const double b = scalar::pair_energy(d.x, w, alpha);
        CHECK(std::abs(a - b) <= 1e-13 * b);
        double brute = 0;
        for (std::size_t i = 0; i < d.x.size(); ++i)
            for (std::size_t j = 0; j < d.x.size(); ++j)
                if (i != j) brute += w[i] * w[j] * std::pow(std::abs(d.x[i] - d.x[j]), -alpha);
        CHECK(std::abs(b - brute) <= 1e-12 * brute);
    }
}

TEST_CASE("pair_energy coincident atoms") {
    std::vector<double> x = {0.1, 0.1, 0.5, 0.7, 0.9}, w(5, 0.2);
    CHECK(std::isinf(scalar::pair_energy(x, w, 0.5)));
    CHECK(std::isinf(pair_energy(x, w, 0.5)));
}

TEST_CASE("force_isa pins dispatch") {
    force_isa(Isa::scalar);
    CHECK(active_isa() == Isa::scalar);
    force_isa(Isa::avx2);
    CHECK(active_isa() == detected_isa());
    reset_isa();
    CHECK(active_isa() == detected_isa());
}
