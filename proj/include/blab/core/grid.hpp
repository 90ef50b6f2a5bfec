#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace blab {

using cplx = std::complex<double>;

// Uniform periodic grid x_j = -X/2 + j dx on [-X/2, X/2), N points, with dual
// frequencies xi_k = 2 pi k / X for k in [-N/2, N/2).
class Grid {
public:
    Grid(double half_width, std::size_t n);

    double half_width() const { return half_width_; }
    double length() const { return 2.0 * half_width_; }
    std::size_t size() const { return n_; }
    double dx() const { return length() / static_cast<double>(n_); }
    double dxi() const;
    double x(std::size_t j) const { return -half_width_ + static_cast<double>(j) * dx(); }
    // frequency of coefficient slot j (slot 0 is the most negative frequency)
    double xi(std::size_t j) const;
    long freq_index(std::size_t j) const { return static_cast<long>(j) - static_cast<long>(n_ / 2); }

    bool operator==(const Grid& o) const { return half_width_ == o.half_width_ && n_ == o.n_; }

private:
    double half_width_;
    std::size_t n_;
};

class SampledSignal {
public:
    SampledSignal(Grid grid, std::vector<cplx> values);
    const Grid& grid() const { return grid_; }
    std::span<const cplx> values() const { return values_; }
    std::span<cplx> values() { return values_; }
    double l2_norm() const;

private:
    Grid grid_;
    std::vector<cplx> values_;
};

// Coefficients in ascending frequency order, f_hat(xi_k) = int e^{-i x xi} f dx.
class Spectrum {
public:
    Spectrum(Grid grid, std::vector<cplx> coeffs);
    const Grid& grid() const { return grid_; }
    std::span<const cplx> coeffs() const { return coeffs_; }
    std::span<cplx> coeffs() { return coeffs_; }
    // (2 pi)^{-1/2} times the trapezoid L2 norm of f_hat, i.e. the L2 norm of f
    double l2_norm() const;

private:
    Grid grid_;
    std::vector<cplx> coeffs_;
};

Spectrum forward(const SampledSignal& f);
SampledSignal inverse(const Spectrum& s);

struct SobolevParams {
    double s = 0.0;
    bool homogeneous = false;
};

// Sobolev weight w(xi) = (1+xi^2)^s or |xi|^{2s}; |0|^0 is taken as 1.
double sobolev_weight(double xi, const SobolevParams& p);

// (int w |f_hat|^2 dxi)^{1/2} by the trapezoid rule on the frequency grid.
double sobolev_norm(const Spectrum& s, const SobolevParams& p);

// low = f_hat * phi, high = f_hat - low
std::pair<Spectrum, Spectrum> band_split(const Spectrum& s);

bool is_power_of_two(std::size_t n);

}  // namespace blab
