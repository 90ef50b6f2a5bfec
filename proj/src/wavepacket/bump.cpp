#include "blab/wavepacket/bump.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "blab/core/error.hpp"
#include "blab/core/fit.hpp"
#include "blab/quad/gauss.hpp"

namespace blab {

namespace {

constexpr int kPanels = 64;
constexpr int kSamplesPerPiece = 64;
constexpr double kPi = std::numbers::pi;

// Chebyshev nodes of the first kind on [-1, 1]
double cheb_node(int j) { return std::cos(kPi * (j + 0.5) / (BumpProfile::kDegree + 1)); }

template <class F>
BumpProfile::Piece fit_piece(F&& f, double lo, double hi) {
    constexpr int n = BumpProfile::kDegree + 1;
    std::array<double, n> vals;
    for (int j = 0; j < n; ++j) vals[j] = f(0.5 * (lo + hi) + 0.5 * (hi - lo) * cheb_node(j));
    BumpProfile::Piece c{};
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += vals[j] * std::cos(kPi * k * (j + 0.5) / n);
        c[k] = (k == 0 ? 1.0 : 2.0) * s / n;
    }
    return c;
}

double clenshaw(const BumpProfile::Piece& c, double u) {
    double b1 = 0.0, b2 = 0.0;
    for (int k = BumpProfile::kDegree; k >= 1; --k) {
        const double b0 = 2.0 * u * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return u * b1 - b2 + c[0];
}

}  // namespace

BumpProfile::BumpProfile(const BumpOptions& opt) : sharpness_(opt.sharpness), range_(opt.range) {
    if (!(sharpness_ > 0.0) || !std::isfinite(sharpness_)) throw InvalidArgument("bump sharpness must be positive");
    if (range_ < 20) throw InvalidArgument("bump tabulation range must be at least 20");

    // g(xi) = 2 int_0^1 cos(x xi) g_check(x) dx
    quad::composite(quad::gauss_legendre(20), 0.0, 1.0, kPanels, qx_, qw_);
    for (std::size_t i = 0; i < qx_.size(); ++i) qw_[i] *= 2.0 * gcheck(qx_[i]);

    g_.resize(range_);
    dg_.resize(range_);
    for (int m = 0; m < range_; ++m) {
        g_[m] = fit_piece([&](double xi) { return g_direct(xi); }, m, m + 1);
        dg_[m] = fit_piece([&](double xi) { return dg_direct(xi); }, m, m + 1);
    }
    for (int p = 0; p < 3; ++p) {
        cum_[p].assign(range_ + 1, 0.0);
        for (int m = 0; m < range_; ++m) cum_[p][m + 1] = cum_[p][m] + piece_abs(g_, m, m, m + 1, p);
    }
    cum_tv_.assign(range_ + 1, 0.0);
    for (int m = 0; m < range_; ++m) cum_tv_[m + 1] = cum_tv_[m] + piece_abs(dg_, m, m, m + 1, 0);

    // envelope on the local maxima of |g| over the last decade of the table
    std::vector<double> sx, ly;
    const int first = range_ / 10;
    double prev2 = -1.0, prev1 = -1.0, x1 = 0.0;
    for (int m = first; m < range_; ++m) {
        for (int i = 0; i < kSamplesPerPiece; ++i) {
            const double xi = m + (i + 0.5) / kSamplesPerPiece;
            const double a = std::abs(g(xi));
            if (prev2 >= 0.0 && prev1 > prev2 && prev1 >= a && prev1 > 0.0) {
                sx.push_back(std::sqrt(x1));
                ly.push_back(std::log(prev1));
            }
            prev2 = prev1;
            prev1 = a;
            x1 = xi;
        }
    }
    if (sx.size() < 4) throw InvalidArgument("bump transform has too few local maxima to fit a tail envelope");
    const LineFit fit = fit_line(sx, ly);
    if (!(fit.slope < 0.0)) throw InvalidArgument("bump transform does not decay over the last tabulated decade");
    // widened rate, amplitude raised until the envelope covers the decade
    env_b_ = -0.9 * fit.slope;
    // (1% over the sampled values absorbs the peaks between samples)
    env_a_ = 0.0;
    for (int m = first; m < range_; ++m)
        for (int i = 0; i <= kSamplesPerPiece; ++i) {
            const double xi = m + static_cast<double>(i) / kSamplesPerPiece;
            env_a_ = std::max(env_a_, std::abs(g(xi)) * std::exp(env_b_ * std::sqrt(xi)));
        }
    env_a_ *= 1.01;
    const double sr = std::sqrt(static_cast<double>(range_));
    // int_R^inf A e^{-b sqrt(x)} dx = 2 A e^{-b sqrt(R)} (sqrt(R)/b + 1/b^2), both sides
    tail_bound_ = 2.0 * 2.0 * env_a_ * std::exp(-env_b_ * sr) * (sr / env_b_ + 1.0 / (env_b_ * env_b_));

    integral_ = 2.0 * kPi * gcheck(0.0);
    double signed_table = 0.0;
    const quad::Rule& r = quad::gauss_legendre(20);
    for (int m = 0; m < range_; ++m)
        for (std::size_t i = 0; i < r.x.size(); ++i) signed_table += 0.5 * r.w[i] * clenshaw(g_[m], r.x[i]);
    integral_quad_ = 2.0 * signed_table;

    const double target = std::abs(integral_) / 100.0;
    L_ = -1.0;
    for (int i = 0; i <= 2 * range_; ++i) {
        const double l = 0.5 * i;
        if (outer_mass(l) <= target) {
            L_ = l;
            margin_ = target - outer_mass(l);
            break;
        }
    }
    if (L_ <= 0.0) throw InvalidArgument("tail inequality not reached within the tabulation range");
}

double BumpProfile::gcheck(double x) const {
    if (!(std::abs(x) < 1.0)) return 0.0;
    return std::exp(-sharpness_ / (1.0 - x * x));
}

double BumpProfile::g_direct(double xi) const {
    double s = 0.0;
    for (std::size_t i = 0; i < qx_.size(); ++i) s += qw_[i] * std::cos(qx_[i] * xi);
    return s;
}

double BumpProfile::dg_direct(double xi) const {
    double s = 0.0;
    for (std::size_t i = 0; i < qx_.size(); ++i) s -= qw_[i] * qx_[i] * std::sin(qx_[i] * xi);
    return s;
}

double BumpProfile::eval(const std::vector<Piece>& table, double xi) const {
    const int m = std::min(static_cast<int>(xi), range_ - 1);
    return clenshaw(table[m], 2.0 * (xi - m) - 1.0);
}

double BumpProfile::g(double xi) const {
    const double a = std::abs(xi);
    return a < range_ ? eval(g_, a) : g_direct(a);
}

double BumpProfile::dg(double xi) const {
    const double a = std::abs(xi);
    const double d = a < range_ ? eval(dg_, a) : dg_direct(a);
    return xi < 0.0 ? -d : d;
}

// int_lo^hi |f| xi^p over one piece: sign changes are located by sampling and
// bisection, and each sign-definite stretch is integrated exactly by GL20.
double BumpProfile::piece_abs(const std::vector<Piece>& table, int m, double lo, double hi, int p) const {
    if (!(hi > lo)) return 0.0;
    auto f = [&](double xi) { return clenshaw(table[m], 2.0 * (xi - m) - 1.0); };
    std::vector<double> cuts{lo};
    const int ns = 32;
    double xa = lo, fa = f(lo);
    for (int i = 1; i <= ns; ++i) {
        const double xb = lo + (hi - lo) * i / ns;
        const double fb = f(xb);
        if ((fa < 0.0) != (fb < 0.0) && fa != 0.0 && fb != 0.0) {
            double l = xa, r = xb, fl = fa;
            for (int it = 0; it < 60 && r - l > 1e-15 * std::max(1.0, r); ++it) {
                const double mid = 0.5 * (l + r);
                const double fm = f(mid);
                if ((fm < 0.0) == (fl < 0.0)) l = mid, fl = fm;
                else r = mid;
            }
            cuts.push_back(0.5 * (l + r));
        }
        xa = xb;
        fa = fb;
    }
    cuts.push_back(hi);
    const quad::Rule& r = quad::gauss_legendre(20);
    double total = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double a = cuts[c], b = cuts[c + 1];
        double s = 0.0;
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            const double xi = 0.5 * (a + b) + 0.5 * (b - a) * r.x[i];
            s += r.w[i] * f(xi) * std::pow(xi, p);
        }
        total += std::abs(0.5 * (b - a) * s);
    }
    return total;
}

// partial first piece, whole pieces from the cumulative sums, partial last piece
double BumpProfile::span_integral(const std::vector<Piece>& table, const std::vector<double>& cum, double a, double b,
                                  int p) const {
    if (!(b > a)) return 0.0;
    const int ma = std::min(static_cast<int>(a), range_ - 1);
    const int mb = std::min(static_cast<int>(b), range_ - 1);
    if (ma == mb) return piece_abs(table, ma, a, b, p);
    return piece_abs(table, ma, a, ma + 1, p) + (cum[mb] - cum[ma + 1]) + piece_abs(table, mb, mb, b, p);
}

double BumpProfile::abs_moment(double a, double b, int p) const {
    if (!(a >= 0.0 && b <= range_ && a <= b) || p < 0 || p > 2)
        throw InvalidArgument("abs_moment needs 0 <= a <= b <= range and p in {0, 1, 2}");
    return span_integral(g_, cum_[p], a, b, p);
}

double BumpProfile::total_variation(double a, double b) const {
    if (!(a >= 0.0 && b <= range_ && a <= b)) throw InvalidArgument("total_variation needs 0 <= a <= b <= range");
    return span_integral(dg_, cum_tv_, a, b, 0);
}

double BumpProfile::outer_mass(double r) const {
    if (!(r >= 0.0 && r <= range_)) throw InvalidArgument("outer_mass needs 0 <= r <= range");
    return 2.0 * abs_moment(r, range_, 0) + tail_bound_;
}

int BumpProfile::effective_range(double eps) const {
    for (int r = 1; r <= range_; ++r)
        if (2.0 * (cum_[0][range_] - cum_[0][r]) <= eps) return r;
    return range_;
}

double BumpProfile::c0() const { return std::abs(integral_) / (4.0 * 2.0 * kPi); }

BumpProfile make_bump(const BumpOptions& opt) { return BumpProfile(opt); }

}  // namespace blab
