#pragma once

#include <array>
#include <vector>

namespace blab {

struct BumpOptions {
    // g_check(x) = exp(-sharpness / (1 - x^2)) on (-1, 1)
    double sharpness = 1.0;
    // g is tabulated on [0, range] in unit pieces
    int range = 400;
};

// The profile pair (g_check, g) with g(xi) = int e^{-i x xi} g_check(x) dx,
// which is real and even. g and g' are stored as degree-24 Chebyshev pieces;
// beyond the table |g| is bounded by a fitted envelope A exp(-b sqrt(xi)).
class BumpProfile {
public:
    static constexpr int kDegree = 24;
    using Piece = std::array<double, kDegree + 1>;

    explicit BumpProfile(const BumpOptions& opt = {});

    double sharpness() const { return sharpness_; }
    int range() const { return range_; }

    double gcheck(double x) const;
    // table values; direct quadrature outside the table
    double g(double xi) const;
    double dg(double xi) const;
    // quadrature of the transform, independent of the table
    double g_direct(double xi) const;
    double dg_direct(double xi) const;

    // 2 pi g_check(0)
    double integral() const { return integral_; }
    // int g over the table plus the signed tail estimate
    double integral_quadrature() const { return integral_quad_; }

    // int_a^b |g| xi^p for 0 <= a <= b <= range, p in {0, 1, 2}
    double abs_moment(double a, double b, int p = 0) const;
    // int_a^b |g'| for 0 <= a <= b <= range
    double total_variation(double a, double b) const;
    // bound on int_{|xi| > range} |g|, both sides
    double tail_bound() const { return tail_bound_; }
    // bound on int_{|xi| >= r} |g|, both sides, for 0 <= r <= range
    double outer_mass(double r) const;
    // smallest integer r with 2 int_r^range |g| <= eps (the tail beyond the
    // table is not included)
    int effective_range(double eps) const;

    double envelope_amplitude() const { return env_a_; }
    double envelope_rate() const { return env_b_; }

    // smallest half-integer L with outer_mass(L) <= |int g| / 100
    double L() const { return L_; }
    double tail_margin() const { return margin_; }
    // |int g| / (4 * 2 pi)
    double c0() const;
    double v0() const { return 0.5 / L_; }

private:
    double eval(const std::vector<Piece>& table, double xi) const;
    double piece_abs(const std::vector<Piece>& table, int m, double lo, double hi, int p) const;
    double span_integral(const std::vector<Piece>& table, const std::vector<double>& cum, double a, double b,
                         int p) const;

    double sharpness_;
    int range_;
    std::vector<double> qx_, qw_;
    std::vector<Piece> g_, dg_;
    std::vector<double> cum_[3];
    std::vector<double> cum_tv_;
    double env_a_ = 0.0, env_b_ = 0.0;
    double tail_bound_ = 0.0;
    double integral_ = 0.0, integral_quad_ = 0.0;
    double L_ = 0.0, margin_ = 0.0;
};

BumpProfile make_bump(const BumpOptions& opt = {});

}  // namespace blab
