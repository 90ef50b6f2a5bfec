#include "blab/quad/oscillatory.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "blab/core/error.hpp"
#include "blab/quad/gauss.hpp"
#include "blab/simd/kernels.hpp"

namespace blab::quad {

namespace {

constexpr unsigned kGaussLo = 20, kGaussHi = 30;
constexpr int kLevinLo = 17, kLevinHi = 25;
constexpr double kGaussPhaseLimit = 3.0 * M_PI;
constexpr double kLevinPhaseFloor = M_PI;
constexpr int kMaxDepth = 64;

struct Cheb {
    std::vector<double> s;  // Lobatto points, s[0] = 1
    Eigen::MatrixXd D;
};

Cheb make_cheb(int n) {
    Cheb c;
    c.s.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) c.s[static_cast<std::size_t>(j)] = std::cos(M_PI * j / (n - 1));
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = ((j == 0 || j == n - 1) ? 2.0 : 1.0) * ((j & 1) ? -1.0 : 1.0);
    c.D = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double v = (w[static_cast<std::size_t>(i)] / w[static_cast<std::size_t>(j)]) /
                             (c.s[static_cast<std::size_t>(i)] - c.s[static_cast<std::size_t>(j)]);
            c.D(i, j) = v;
            diag -= v;
        }
        c.D(i, i) = diag;
    }
    return c;
}

const Cheb& cheb(int n) {
    static const Cheb lo = make_cheb(kLevinLo);
    static const Cheb hi = make_cheb(kLevinHi);
    return n == kLevinLo ? lo : hi;
}

cplx gauss_panel(const OscProblem& p, double l, double r, unsigned order) {
    const Rule& rule = gauss_legendre(order);
    const double c = 0.5 * (l + r), h = 0.5 * (r - l);
    const std::size_t n = rule.x.size();
    double th[32];
    cplx amp[32];
    for (std::size_t i = 0; i < n; ++i) {
        const double x = c + h * rule.x[i];
        th[i] = p.phase(x);
        amp[i] = p.amplitude(x) * (h * rule.w[i]);
    }
    return simd::oscillatory_sum({th, n}, {amp, n});
}

cplx levin_panel(const OscProblem& p, double l, double r, int n) {
    const Cheb& cb = cheb(n);
    const double m = 0.5 * (l + r), h = 0.5 * (r - l);
    Eigen::MatrixXcd A(n, n);
    Eigen::VectorXcd f(n);
    for (int i = 0; i < n; ++i) {
        const double x = m + h * cb.s[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) A(i, j) = cplx(cb.D(i, j) / h, 0.0);
        A(i, i) += cplx(0.0, p.dphase(x));
        f(i) = p.amplitude(x);
    }
    const Eigen::VectorXcd q = A.partialPivLu().solve(f);
    return q(0) * std::polar(1.0, p.phase(r)) - q(n - 1) * std::polar(1.0, p.phase(l));
}

struct Panel {
    double l, r;
    int depth;
};

}  // namespace

double amplitude_l1(const std::function<cplx(double)>& amp, double a, double b, std::size_t panels) {
    return integrate([&](double x) { return std::abs(amp(x)); }, a, b, panels, 20);
}

OscResult integrate_oscillatory(const OscProblem& prob, double a, double b, const OscOptions& opt) {
    OscResult res;
    if (!(b > a)) return res;

    std::vector<double> cuts = {a};
    for (double bp : opt.breakpoints)
        if (bp > a && bp < b) cuts.push_back(bp);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Panel> stack;
    for (std::size_t k = cuts.size() - 1; k-- > 0;) {
        const double l = cuts[k], r = cuts[k + 1];
        const double width = r - l;
        std::size_t pieces = 1;
        if (std::isfinite(opt.max_panel_width) && opt.max_panel_width > 0.0)
            pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(width / opt.max_panel_width)));
        if (pieces > opt.panel_budget) throw BudgetExceeded("oscillatory quadrature: initial panel count over budget");
        for (std::size_t q = pieces; q-- > 0;) {
            const double pl = l + width * static_cast<double>(q) / static_cast<double>(pieces);
            const double pr = (q + 1 == pieces) ? r : l + width * static_cast<double>(q + 1) / static_cast<double>(pieces);
            stack.push_back({pl, pr, 0});
        }
    }

    double tol = opt.abs_tol;
    if (tol <= 0.0) {
        const std::size_t np = std::min<std::size_t>(std::max<std::size_t>(stack.size(), 64), 4096);
        tol = opt.rel_tol * amplitude_l1(prob.amplitude, a, b, np);
        if (tol == 0.0) return res;  // amplitude vanishes identically at the sampling nodes
    }
    const double total = b - a;

    const Cheb& probe = cheb(kLevinHi);
    while (!stack.empty()) {
        const Panel pn = stack.back();
        stack.pop_back();
        const double w = pn.r - pn.l;
        const double ptol = tol * w / total;

        double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
        bool pos = false, neg = false;
        const double m = 0.5 * (pn.l + pn.r), h = 0.5 * w;
        for (double s : probe.s) {
            const double d = prob.dphase(m + h * s);
            dmax = std::max(dmax, std::abs(d));
            dmin = std::min(dmin, std::abs(d));
            if (d > 0) pos = true;
            if (d < 0) neg = true;
        }
        const double variation = dmax * w;

        bool accepted = false;
        cplx value;
        double err = 0.0;
        bool levin = false;
        if (variation <= kGaussPhaseLimit) {
            const cplx lo = gauss_panel(prob, pn.l, pn.r, kGaussLo);
            value = gauss_panel(prob, pn.l, pn.r, kGaussHi);
            err = std::abs(value - lo);
            accepted = err <= ptol;
        } else if (opt.allow_levin && !(pos && neg) && dmin * w >= kLevinPhaseFloor) {
            const cplx lo = levin_panel(prob, pn.l, pn.r, kLevinLo);
            value = levin_panel(prob, pn.l, pn.r, kLevinHi);
            err = std::abs(value - lo);
            accepted = err <= ptol && std::isfinite(err);
            levin = true;
        }

        if (accepted) {
            res.value += value;
            res.error += err;
            ++res.panels;
            if (levin) ++res.levin_panels;
            continue;
        }
        if (pn.depth >= kMaxDepth)
            throw BudgetExceeded("oscillatory quadrature: bisection depth exhausted near x = " + std::to_string(m));
        if (res.panels + stack.size() + 2 > opt.panel_budget)
            throw BudgetExceeded("oscillatory quadrature: panel budget of " + std::to_string(opt.panel_budget) +
                                 " exceeded");
        stack.push_back({m, pn.r, pn.depth + 1});
        stack.push_back({pn.l, m, pn.depth + 1});
    }
    return res;
}

}  // namespace blab::quad
