#include "blab/core/spectral_density.hpp"

#include <cmath>

#include "blab/core/cutoff.hpp"
#include "blab/core/error.hpp"
#include "blab/quad/gauss.hpp"

namespace blab {

Spectrum SpectralDensity::sample(const Grid& grid) const {
    std::vector<cplx> c(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) c[j] = (*this)(grid.xi(j));
    return Spectrum(grid, std::move(c));
}

cplx GaussianMixture::operator()(double xi) const {
    double win = smooth_cutoff(2.0 * xi / band);
    if (high_pass) win *= 1.0 - smooth_cutoff(xi);
    if (win == 0.0) return {0.0, 0.0};
    cplx s{0.0, 0.0};
    for (std::size_t m = 0; m < centers.size(); ++m) {
        const double u = (xi - centers[m]) / widths[m];
        s += weights[m] * std::exp(-0.5 * u * u);
    }
    return s * win;
}

SpectralDensity GaussianMixture::density() const {
    double scale = band / 8.0;
    for (double w : widths) scale = std::min(scale, w);
    GaussianMixture copy = *this;
    return SpectralDensity{[copy](double xi) { return copy(xi); }, -band, band, scale};
}

GaussianMixture random_bandlimited(const CounterRng& rng, double band, int components, bool high_pass) {
    if (!(band > 0.0) || components < 1) throw InvalidArgument("random_bandlimited: need band > 0 and components >= 1");
    GaussianMixture g;
    g.band = band;
    g.high_pass = high_pass;
    std::uint64_t c = 0;
    for (int m = 0; m < components; ++m) {
        g.centers.push_back(rng.uniform(c++, -0.9 * band, 0.9 * band));
        g.widths.push_back(rng.uniform(c++, 1.0, 1.0 + 0.05 * band));
        const double re = rng.normal(c++);
        const double im = rng.normal(c++);
        g.weights.emplace_back(re, im);
    }
    return g;
}

double sobolev_norm(const SpectralDensity& f, const SobolevParams& p) {
    const double width = f.hi - f.lo;
    const std::size_t panels = static_cast<std::size_t>(std::ceil(width / (0.25 * f.scale))) + 1;
    std::vector<std::pair<double, double>> pieces;
    if (f.lo < 0.0 && f.hi > 0.0) {
        pieces = {{f.lo, 0.0}, {0.0, f.hi}};
    } else {
        pieces = {{f.lo, f.hi}};
    }
    double s = 0.0;
    for (auto [a, b] : pieces) {
        const std::size_t np = std::max<std::size_t>(1, panels * static_cast<std::size_t>(std::ceil((b - a) / width * 1.0)));
        s += quad::integrate([&](double xi) { return sobolev_weight(xi, p) * std::norm(f(xi)); }, a, b, np, 20);
    }
    return std::sqrt(s);
}

}  // namespace blab
