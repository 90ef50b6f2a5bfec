#include <doctest.h>

#include <cmath>

#include "blab/core/error.hpp"
#include "blab/core/fit.hpp"
#include "blab/quad/gauss.hpp"
#include "blab/quad/oscillatory.hpp"

using namespace blab;
using namespace blab::quad;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    for (unsigned n : {1u, 5u, 16u, 20u, 24u, 30u}) {
        const Rule& r = gauss_legendre(n);
        CHECK(r.x.size() == n);
        for (unsigned k = 0; k < 2 * n; ++k) {
            double s = 0;
            for (std::size_t i = 0; i < n; ++i) s += r.w[i] * std::pow(r.x[i], k);
            const double exact = (k % 2) ? 0.0 : 2.0 / (k + 1);
            CHECK(std::abs(s - exact) < 1e-14);
        }
        for (std::size_t i = 1; i < n; ++i) CHECK(r.x[i] > r.x[i - 1]);
    }
}

TEST_CASE("plane wave via collocation panels") {
    for (double lam : {10.0, 1e3, 1e5, 1e8}) {
        OscProblem p{[](double) { return cplx(1.0); }, [lam](double x) { return lam * x; },
                     [lam](double) { return lam; }};
        OscResult r = integrate_oscillatory(p, 0.0, 1.0);
        const cplx exact = (std::polar(1.0, lam) - 1.0) / cplx(0.0, lam);
        CHECK(std::abs(r.value - exact) < 1e-12 / std::max(1.0, lam / 100));
        if (lam >= 1e5) CHECK(r.levin_panels > 0);
    }
}

TEST_CASE("Fresnel integral with a stationary endpoint") {
    OscProblem p{[](double) { return cplx(1.0); }, [](double x) { return x * x; }, [](double x) { return 2 * x; }};
    OscResult r = integrate_oscillatory(p, 0.0, 10.0);
    CHECK(std::abs(r.value - cplx(0.60112518481344434813, 0.58367089992962334216)) < 1e-11);
    OscOptions gl_only;
    gl_only.allow_levin = false;
    OscResult g = integrate_oscillatory(p, 0.0, 10.0, gl_only);
    CHECK(std::abs(g.value - r.value) < 1e-11);
}

TEST_CASE("chirped Gaussian") {
    OscProblem p{[](double x) { return cplx(std::exp(-x * x)); }, [](double x) { return 10 * x + 3 * x * x; },
                 [](double x) { return 10 + 6 * x; }};
    OscResult r = integrate_oscillatory(p, -8.0, 8.0);
    CHECK(std::abs(r.value - cplx(0.067879819247834248155, -0.045674971900904379565)) < 1e-12);
}

TEST_CASE("interior stationary point with fast phase") {
    // int_{-1}^{1} e^{i lam x^2} dx -> sqrt(pi/lam) e^{i pi/4} as lam grows; compare to GL-only run
    const double lam = 2e4;
    OscProblem p{[](double) { return cplx(1.0); }, [lam](double x) { return lam * x * x; },
                 [lam](double x) { return 2 * lam * x; }};
    OscResult a = integrate_oscillatory(p, -1.0, 1.0);
    OscOptions gl;
    gl.allow_levin = false;
    OscResult b = integrate_oscillatory(p, -1.0, 1.0, gl);
    CHECK(std::abs(a.value - b.value) < 1e-11);
    CHECK(a.panels < b.panels);
}

TEST_CASE("budget exhaustion is reported") {
    OscProblem p{[](double x) { return cplx(std::cos(50 * x)); }, [](double x) { return 1e4 * x * x; },
                 [](double x) { return 2e4 * x; }};
    OscOptions o;
    o.panel_budget = 8;
    o.allow_levin = false;
    CHECK_THROWS_AS(integrate_oscillatory(p, -5.0, 5.0, o), BudgetExceeded);
}

TEST_CASE("log-log regression identity") {
    std::vector<double> x, y;
    for (int i = 0; i < 10; ++i) {
        x.push_back(std::pow(10.0, -3 + 0.25 * i));
        y.push_back(2.5 * std::pow(x.back(), -0.5));
    }
    LineFit f = fit_loglog(x, y);
    CHECK(std::abs(f.slope + 0.5) < 1e-12);
    CHECK(std::abs(std::exp(f.intercept) - 2.5) < 1e-11);
    auto g = log_grid(1e-3, 1e-1, 4);
    CHECK(g.size() == 9);
    CHECK(g.back() == 1e-1);
}
